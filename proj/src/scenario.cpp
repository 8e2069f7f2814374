#include "depclust/scenario.hpp"

#include "depclust/copula.hpp"
#include "depclust/error.hpp"
#include "depclust/random.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace depclust {

struct ExprNode {
    enum class Op { number, variable, neg, add, sub, mul, div, pow, call, noise };
    Op op = Op::number;
    double value = 0.0;      // number literal, noise sigma
    std::string name;        // variable or function name
    std::vector<std::shared_ptr<const ExprNode>> args;
    std::size_t noise_id = 0;
};

namespace {

using Node = std::shared_ptr<const ExprNode>;

[[noreturn]] void fail_at(std::size_t line, const std::string& what) {
    throw SpecError("scenario line " + std::to_string(line) + ": " + what);
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::optional<double> to_double(std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_' || c == '.'; });
}

class ExpressionParser {
public:
    ExpressionParser(std::string_view text, std::size_t line) : text_(text), line_(line) {}

    Node parse() {
        Node node = expr();
        skip_space();
        if (pos_ != text_.size()) error("unexpected '" + std::string(text_.substr(pos_, 1)) + "'");
        return node;
    }

private:
    [[noreturn]] void error(const std::string& what) const {
        fail_at(line_, "expression '" + std::string(text_) + "': " + what);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static Node binary(ExprNode::Op op, Node lhs, Node rhs) {
        auto node = std::make_shared<ExprNode>();
        node->op = op;
        node->args = {std::move(lhs), std::move(rhs)};
        return node;
    }

    Node expr() {
        Node lhs = term();
        for (;;) {
            if (accept('+')) lhs = binary(ExprNode::Op::add, lhs, term());
            else if (accept('-')) lhs = binary(ExprNode::Op::sub, lhs, term());
            else return lhs;
        }
    }

    Node term() {
        Node lhs = unary();
        for (;;) {
            if (accept('*')) lhs = binary(ExprNode::Op::mul, lhs, unary());
            else if (accept('/')) lhs = binary(ExprNode::Op::div, lhs, unary());
            else return lhs;
        }
    }

    Node unary() {
        if (accept('-')) {
            auto node = std::make_shared<ExprNode>();
            node->op = ExprNode::Op::neg;
            node->args = {unary()};
            return node;
        }
        if (accept('+')) return unary();
        return power();
    }

    Node power() {
        Node base = primary();
        if (accept('^')) return binary(ExprNode::Op::pow, base, unary());
        return base;
    }

    Node primary() {
        skip_space();
        if (pos_ >= text_.size()) error("unexpected end");
        if (accept('(')) {
            Node inner = expr();
            if (!accept(')')) error("missing ')'");
            return inner;
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
                    text_[pos_] == 'e' || text_[pos_] == 'E' ||
                    ((text_[pos_] == '-' || text_[pos_] == '+') && (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
                ++pos_;
            const auto v = to_double(text_.substr(start, pos_ - start));
            if (!v) error("bad number '" + std::string(text_.substr(start, pos_ - start)) + "'");
            auto node = std::make_shared<ExprNode>();
            node->value = *v;
            return node;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                           text_[pos_] == '_' || text_[pos_] == '.'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (!accept('(')) {
                auto node = std::make_shared<ExprNode>();
                node->op = ExprNode::Op::variable;
                node->name = std::move(name);
                return node;
            }
            std::vector<Node> args;
            if (!accept(')')) {
                do {
                    args.push_back(expr());
                } while (accept(','));
                if (!accept(')')) error("missing ')' after arguments of " + name);
            }
            return call(std::move(name), std::move(args));
        }
        error("unexpected '" + std::string(1, c) + "'");
    }

    Node call(std::string name, std::vector<Node> args) {
        static const std::map<std::string, std::size_t> arity = {
            {"exp", 1}, {"log", 1}, {"sin", 1}, {"cos", 1}, {"abs", 1}, {"sqrt", 1}, {"mod", 2}, {"noise", 1}};
        const auto it = arity.find(name);
        if (it == arity.end()) error("unknown function '" + name + "'");
        if (args.size() != it->second) error(name + " takes " + std::to_string(it->second) + " argument(s)");
        auto node = std::make_shared<ExprNode>();
        if (name == "noise") {
            if (args[0]->op != ExprNode::Op::number || args[0]->value < 0.0)
                error("noise needs a non-negative number literal");
            node->op = ExprNode::Op::noise;
            node->value = args[0]->value;
            node->noise_id = noise_count_++;
            return node;
        }
        node->op = ExprNode::Op::call;
        node->name = std::move(name);
        node->args = std::move(args);
        return node;
    }

    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
    std::size_t noise_count_ = 0;
};

void collect_references(const ExprNode& node, std::set<std::string>& out) {
    if (node.op == ExprNode::Op::variable) out.insert(node.name);
    for (const auto& a : node.args) collect_references(*a, out);
}

std::map<std::string, std::string> parse_options(const std::vector<std::string>& words, std::size_t first,
                                                 std::size_t line) {
    std::map<std::string, std::string> out;
    for (std::size_t i = first; i < words.size(); ++i) {
        const auto eq = words[i].find('=');
        if (eq == std::string::npos || eq == 0) fail_at(line, "expected key=value, got '" + words[i] + "'");
        if (!out.emplace(words[i].substr(0, eq), words[i].substr(eq + 1)).second)
            fail_at(line, "option '" + words[i].substr(0, eq) + "' given twice");
    }
    return out;
}

double option_number(const std::map<std::string, std::string>& options, const std::string& key, double fallback,
                     std::size_t line) {
    const auto it = options.find(key);
    if (it == options.end()) return fallback;
    const auto v = to_double(it->second);
    if (!v) fail_at(line, "option " + key + " needs a number, got '" + it->second + "'");
    return *v;
}

std::vector<std::string> parse_variable_list(const std::string& text, std::size_t line) {
    auto names = split(text, ',');
    for (const auto& name : names)
        if (!is_identifier(name)) fail_at(line, "bad variable name '" + name + "'");
    return names;
}

CopulaFamily tau_family(SamplerFamily family) {
    switch (family) {
        case SamplerFamily::clayton: return CopulaFamily::clayton;
        case SamplerFamily::gumbel: return CopulaFamily::gumbel;
        case SamplerFamily::frank: return CopulaFamily::frank;
        case SamplerFamily::joe: return CopulaFamily::joe;
        default: return CopulaFamily::gaussian;
    }
}

Directive parse_copula(const std::vector<std::string>& words, std::size_t line) {
    if (words.size() < 3) fail_at(line, "usage: copula <family> <V1,V2,...> [key=value ...]");
    Directive d;
    d.kind = Directive::Kind::copula;
    d.line = line;
    try {
        d.sampler.family = parse_sampler(words[1]);
    } catch (const SpecError& e) {
        fail_at(line, e.what());
    }
    d.variables = parse_variable_list(words[2], line);
    d.sampler.dim = d.variables.size();
    const auto options = parse_options(words, 3, line);
    static const std::set<std::string> known = {"tau", "theta", "rho", "nu", "alpha", "beta", "intervals"};
    for (const auto& [key, value] : options)
        if (!known.contains(key)) fail_at(line, "unknown copula option '" + key + "'");

    const bool elliptical =
        d.sampler.family == SamplerFamily::gaussian || d.sampler.family == SamplerFamily::student_t;
    const std::size_t given = options.count("tau") + options.count("theta") + options.count("rho");
    if (given > 1) fail_at(line, "give at most one of tau, theta and rho");
    try {
        if (options.contains("tau")) {
            const double tau = option_number(options, "tau", 0.0, line);
            d.sampler.parameter = elliptical ? std::sin(std::numbers::pi * tau / 2.0)
                                             : tau_to_parameter(tau_family(d.sampler.family), tau);
        } else {
            d.sampler.parameter = option_number(options, elliptical ? "rho" : "theta", 0.0, line);
            if (!elliptical && options.contains("rho")) fail_at(line, "rho applies to gaussian and student_t only");
        }
        d.sampler.nu = option_number(options, "nu", d.sampler.nu, line);
        d.sampler.alpha = option_number(options, "alpha", 0.0, line);
        d.sampler.beta = option_number(options, "beta", 0.0, line);
        if (const auto it = options.find("intervals"); it != options.end()) {
            for (const auto& piece : split(it->second, ';')) {
                const auto ends = split(piece, ':');
                const auto a = ends.size() == 2 ? to_double(ends[0]) : std::nullopt;
                const auto b = ends.size() == 2 ? to_double(ends[1]) : std::nullopt;
                if (!a || !b) fail_at(line, "intervals look like a1:b1;a2:b2, got '" + piece + "'");
                d.sampler.intervals.emplace_back(*a, *b);
            }
        }
        d.sampler.validate();
    } catch (const SpecError& e) {
        const std::string what = e.what();
        if (what.starts_with("scenario line")) throw;
        fail_at(line, what);
    }
    return d;
}

}  // namespace

ScenarioSpec ScenarioSpec::parse(std::string_view text) {
    ScenarioSpec spec;
    std::set<std::string> defined;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        std::vector<std::string> words;
        {
            std::istringstream ws(line);
            std::string w;
            while (ws >> w) words.push_back(w);
        }
        const std::string& head = words[0];
        const std::string rest = trim(std::string_view(line).substr(head.size()));

        auto define = [&](const std::vector<std::string>& names) {
            for (const auto& name : names)
                if (!defined.insert(name).second) fail_at(line_no, "variable '" + name + "' defined twice");
        };

        if (head == "name") {
            if (rest.empty()) fail_at(line_no, "name needs a value");
            spec.name = rest;
        } else if (head == "n") {
            std::size_t n = 0;
            const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
            if (ec != std::errc{} || ptr != rest.data() + rest.size() || n < 3)
                fail_at(line_no, "n needs an integer >= 3");
            spec.n = n;
        } else if (head == "seed") {
            std::uint64_t seed = 0;
            const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), seed);
            if (ec != std::errc{} || ptr != rest.data() + rest.size()) fail_at(line_no, "seed needs an unsigned integer");
            spec.seed = seed;
        } else if (head == "copula") {
            Directive d = parse_copula(words, line_no);
            define(d.variables);
            spec.directives.push_back(std::move(d));
        } else if (head == "normal" || head == "uniform") {
            if (words.size() < 2) fail_at(line_no, head + " needs a variable name");
            Directive d;
            d.kind = head == "normal" ? Directive::Kind::normal : Directive::Kind::uniform;
            d.line = line_no;
            d.variables = parse_variable_list(words[1], line_no);
            if (d.variables.size() != 1) fail_at(line_no, head + " defines exactly one variable");
            const auto options = parse_options(words, 2, line_no);
            for (const auto& [key, value] : options)
                if (d.kind == Directive::Kind::uniform || (key != "mean" && key != "sd"))
                    fail_at(line_no, "unknown option '" + key + "' for " + head);
            d.mean = option_number(options, "mean", 0.0, line_no);
            d.sd = option_number(options, "sd", 1.0, line_no);
            if (!(d.sd > 0.0)) fail_at(line_no, "sd must be positive");
            define(d.variables);
            spec.directives.push_back(std::move(d));
        } else if (head == "let") {
            const auto eq = rest.find('=');
            if (eq == std::string::npos) fail_at(line_no, "usage: let <V> = <expression>");
            Directive d;
            d.kind = Directive::Kind::let;
            d.line = line_no;
            d.variables = {trim(std::string_view(rest).substr(0, eq))};
            if (!is_identifier(d.variables[0])) fail_at(line_no, "bad variable name '" + d.variables[0] + "'");
            d.expression = trim(std::string_view(rest).substr(eq + 1));
            d.tree = ExpressionParser(d.expression, line_no).parse();
            define(d.variables);
            spec.directives.push_back(std::move(d));
        } else if (head == "columns") {
            spec.columns = parse_variable_list(rest, line_no);
        } else if (head == "benchmark") {
            for (const auto& block : split(rest, '|')) spec.benchmark.push_back(parse_variable_list(block, line_no));
        } else {
            fail_at(line_no, "unknown directive '" + head + "'");
        }
    }
    if (spec.directives.empty()) throw SpecError("scenario defines no variables");
    return spec;
}

namespace {

using Column = std::vector<double>;

Column evaluate(const ExprNode& node, const std::map<std::string, Column>& values, std::size_t n,
                std::uint64_t stream) {
    Column out(n);
    switch (node.op) {
        case ExprNode::Op::number:
            std::fill(out.begin(), out.end(), node.value);
            return out;
        case ExprNode::Op::variable:
            return values.at(node.name);
        case ExprNode::Op::noise: {
            SplitMix64 rng(derive_seed(stream, node.noise_id));
            std::normal_distribution<double> normal(0.0, 1.0);
            for (auto& v : out) v = node.value * normal(rng);
            return out;
        }
        case ExprNode::Op::neg: {
            out = evaluate(*node.args[0], values, n, stream);
            for (auto& v : out) v = -v;
            return out;
        }
        case ExprNode::Op::call: {
            const Column a = evaluate(*node.args[0], values, n, stream);
            const std::string& f = node.name;
            if (f == "mod") {
                const Column b = evaluate(*node.args[1], values, n, stream);
                for (std::size_t i = 0; i < n; ++i) {
                    double r = std::fmod(a[i], b[i]);
                    if (r != 0.0 && (r < 0.0) != (b[i] < 0.0)) r += b[i];
                    out[i] = r;
                }
                return out;
            }
            double (*fn)(double) = nullptr;
            if (f == "exp") fn = [](double x) { return std::exp(x); };
            else if (f == "log") fn = [](double x) { return std::log(x); };
            else if (f == "sin") fn = [](double x) { return std::sin(x); };
            else if (f == "cos") fn = [](double x) { return std::cos(x); };
            else if (f == "abs") fn = [](double x) { return std::abs(x); };
            else fn = [](double x) { return std::sqrt(x); };
            for (std::size_t i = 0; i < n; ++i) out[i] = fn(a[i]);
            return out;
        }
        default: break;
    }
    const Column a = evaluate(*node.args[0], values, n, stream);
    const Column b = evaluate(*node.args[1], values, n, stream);
    for (std::size_t i = 0; i < n; ++i) {
        switch (node.op) {
            case ExprNode::Op::add: out[i] = a[i] + b[i]; break;
            case ExprNode::Op::sub: out[i] = a[i] - b[i]; break;
            case ExprNode::Op::mul: out[i] = a[i] * b[i]; break;
            case ExprNode::Op::div: out[i] = a[i] / b[i]; break;
            default: out[i] = b[i] == 2.0 ? a[i] * a[i] : std::pow(a[i], b[i]); break;
        }
    }
    return out;
}

std::uint64_t directive_stream(std::uint64_t seed, const Directive& d) {
    std::string key = d.kind == Directive::Kind::let ? "let" : d.kind == Directive::Kind::copula ? "copula" : "marginal";
    for (const auto& v : d.variables) key += ":" + v;
    return derive_seed(seed, hash_label(key));
}

}  // namespace

Scenario generate_scenario(const ScenarioSpec& spec) {
    if (spec.n < 3) throw SpecError("scenario needs n >= 3");
    const std::size_t n = spec.n;

    std::vector<std::string> declared;
    std::map<std::string, std::size_t> owner;  // variable -> directive
    for (std::size_t i = 0; i < spec.directives.size(); ++i) {
        for (const auto& v : spec.directives[i].variables) {
            if (!owner.emplace(v, i).second) throw SpecError("variable '" + v + "' defined twice");
            declared.push_back(v);
        }
    }

    // dependency order over let directives (Kahn, stable in declaration order)
    std::vector<std::set<std::size_t>> deps(spec.directives.size());
    for (std::size_t i = 0; i < spec.directives.size(); ++i) {
        const Directive& d = spec.directives[i];
        if (d.kind != Directive::Kind::let) continue;
        std::set<std::string> refs;
        collect_references(*d.tree, refs);
        for (const auto& r : refs) {
            const auto it = owner.find(r);
            if (it == owner.end())
                throw SpecError("scenario line " + std::to_string(d.line) + ": undefined variable '" + r + "'");
            if (it->second == i)
                throw SpecError("scenario line " + std::to_string(d.line) + ": '" + r + "' refers to itself");
            deps[i].insert(it->second);
        }
    }

    std::map<std::string, Column> values;
    std::vector<bool> done(spec.directives.size(), false);
    for (std::size_t finished = 0; finished < spec.directives.size();) {
        bool progress = false;
        for (std::size_t i = 0; i < spec.directives.size(); ++i) {
            if (done[i]) continue;
            if (!std::all_of(deps[i].begin(), deps[i].end(), [&](std::size_t j) { return done[j]; })) continue;
            const Directive& d = spec.directives[i];
            const std::uint64_t stream = directive_stream(spec.seed, d);
            switch (d.kind) {
                case Directive::Kind::copula: {
                    auto cols = sample_copula(d.sampler, n, stream);
                    for (std::size_t c = 0; c < d.variables.size(); ++c) values[d.variables[c]] = std::move(cols[c]);
                    break;
                }
                case Directive::Kind::normal: {
                    SplitMix64 rng(stream);
                    std::normal_distribution<double> normal(d.mean, d.sd);
                    Column col(n);
                    for (auto& v : col) v = normal(rng);
                    values[d.variables[0]] = std::move(col);
                    break;
                }
                case Directive::Kind::uniform: {
                    SplitMix64 rng(stream);
                    Column col(n);
                    for (auto& v : col) v = rng.uniform();
                    values[d.variables[0]] = std::move(col);
                    break;
                }
                case Directive::Kind::let: {
                    Column col = evaluate(*d.tree, values, n, stream);
                    for (std::size_t r = 0; r < n; ++r) {
                        if (!std::isfinite(col[r]))
                            throw SpecError("scenario line " + std::to_string(d.line) + ": " + d.variables[0] +
                                            " is not finite at row " + std::to_string(r + 1) + " (" + d.expression +
                                            ")");
                    }
                    values[d.variables[0]] = std::move(col);
                    break;
                }
            }
            done[i] = true;
            ++finished;
            progress = true;
        }
        if (!progress) throw SpecError("scenario 'let' directives form a cycle");
    }

    const std::vector<std::string> order = spec.columns.empty() ? declared : spec.columns;
    if (order.size() != declared.size() ||
        std::set<std::string>(order.begin(), order.end()) != std::set<std::string>(declared.begin(), declared.end()))
        throw SpecError("columns directive must list every variable exactly once");

    std::vector<Column> columns;
    for (const auto& name : order) columns.push_back(values.at(name));
    Scenario out{SampleMatrix(order, std::move(columns)), std::nullopt};

    if (!spec.benchmark.empty()) {
        Partition p;
        for (const auto& block : spec.benchmark) {
            std::vector<std::size_t> idx;
            for (const auto& name : block) {
                if (!owner.contains(name)) throw SpecError("benchmark names unknown variable '" + name + "'");
                idx.push_back(out.data.index_of(name));
            }
            p.blocks.emplace_back(std::move(idx));
        }
        try {
            p.validate(out.data.cols());
        } catch (const InputError& e) {
            throw SpecError(std::string("benchmark: ") + e.what());
        }
        out.benchmark = p.canonical();
    }
    return out;
}

std::vector<std::string> builtin_scenario_names() {
    return {"asym-mod-k", "w-vs-marshall-olkin", "mix-vs-ordinal", "linkage-sum",
            "five-var",   "noise",               "four-groups",    "three-copulas"};
}

std::string builtin_scenario_text(std::string_view name, const BuiltinParams& params) {
    std::ostringstream s;
    s.precision(17);
    s << "name " << name << "\nn " << params.n << "\nseed " << params.seed << "\n";
    if (name == "asym-mod-k") {
        if (params.k < 1) throw SpecError("asym-mod-k needs k >= 1");
        s << "uniform X1\nlet X2 = mod(" << params.k << " * X1, 1)\n";
    } else if (name == "w-vs-marshall-olkin") {
        s << "copula W X1,X2\n"
             "copula marshall_olkin X4,X3 alpha=1 beta=0.5\n"
             "columns X1,X2,X3,X4\n";
    } else if (name == "mix-vs-ordinal") {
        s << "copula frechet_mix X1,X2\n"
             "copula ordinal_sum X3,X4 intervals=0:0.3;0.3:0.5;0.5:0.75;0.75:1\n";
    } else if (name == "linkage-sum") {
        s << "normal X1\nnormal X2\nlet X3 = X1 + X2\n";
    } else if (name == "five-var") {
        s << "copula student_t X1,X2 rho=0 nu=0.1\n"
             "let X3 = -exp(X2) + noise(0.2)\n"
             "let X4 = log(-X3) + noise(1)\n"
             "let X5 = -sin(1.5 * X4 + 0.5 * X2)\n"
             "benchmark X1 | X2,X3 | X4,X5\n";
    } else if (name == "noise") {
        if (!(params.sigma >= 0.0)) throw SpecError("noise needs sigma >= 0");
        s << "normal X1\n"
             "let X2 = X1^2 + X1 + noise("
          << params.sigma
          << ")\n"
             "normal X3\n"
             "let X4 = exp(-X3) + noise("
          << params.sigma
          << ")\n"
             "let X5 = X4 + sin(X3) + noise("
          << params.sigma
          << ")\n"
             "normal X6\n"
             "benchmark X1,X2 | X3,X4,X5 | X6\n";
    } else if (name == "four-groups") {
        if (!(params.alpha > 0.0 && params.alpha * 0.8 < 1.0)) throw SpecError("four-groups needs 0 < alpha < 1.25");
        const char groups[] = {'A', 'B', 'C', 'D'};
        const double taus[] = {0.2, 0.4, 0.6, 0.8};
        std::string bench;
        for (int g = 0; g < 4; ++g) {
            std::string vars;
            for (int i = 1; i <= 5; ++i) vars += (i > 1 ? "," : "") + std::string(1, groups[g]) + std::to_string(i);
            s << "copula clayton " << vars << " tau=" << params.alpha * taus[g] << "\n";
            bench += (g > 0 ? " | " : "") + vars;
        }
        s << "benchmark " << bench << "\n";
    } else if (name == "three-copulas") {
        s << "copula gaussian N1,N2,N3 tau=0.15\n"
             "copula clayton C1,C2,C3 tau=0.3\n"
             "copula gumbel G1,G2,G3 tau=0.45\n"
             "benchmark N1,N2,N3 | C1,C2,C3 | G1,G2,G3\n";
    } else {
        throw SpecError("unknown scenario '" + std::string(name) + "'");
    }
    return s.str();
}

ScenarioSpec builtin_scenario(std::string_view name, const BuiltinParams& params) {
    return ScenarioSpec::parse(builtin_scenario_text(name, params));
}

}  // namespace depclust
