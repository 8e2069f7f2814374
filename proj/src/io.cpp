#include "depclust/io.hpp"

#include "depclust/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace depclust {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string unquote(std::string s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos
                                                                                           : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

SampleMatrix read_csv(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> labels;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) break;
    }
    if (trim(line).empty()) throw InputError(source + ": empty file (a header row is required)");
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    for (auto& field : split_fields(line)) labels.push_back(unquote(field));
    for (std::size_t c = 0; c < labels.size(); ++c)
        if (labels[c].empty()) throw InputError(source + ": header column " + std::to_string(c + 1) + " has no name");

    std::vector<std::vector<double>> columns(labels.size());
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != labels.size())
            throw InputError(source + ": line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                             " fields, expected " + std::to_string(labels.size()));
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const std::string& f = fields[c];
            auto where = [&] {
                return source + ": line " + std::to_string(line_no) + ", column " + std::to_string(c + 1) + " ('" +
                       labels[c] + "')";
            };
            if (f.empty() || f == "NA" || f == "NaN" || f == "nan") throw InputError(where() + ": missing value");
            double v = 0.0;
            const char* first = f.data();
            if (*first == '+') ++first;
            const auto [ptr, ec] = std::from_chars(first, f.data() + f.size(), v);
            if (ec != std::errc{} || ptr != f.data() + f.size())
                throw InputError(where() + ": not a number: '" + f + "'");
            if (!std::isfinite(v)) throw InputError(where() + ": non-finite value");
            columns[c].push_back(v);
        }
    }
    try {
        return SampleMatrix(std::move(labels), std::move(columns));
    } catch (const DegenerateColumnError& e) {
        throw DegenerateColumnError(source + ": " + e.what());
    } catch (const InputError& e) {
        throw InputError(source + ": " + e.what());
    }
}

SampleMatrix read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return read_csv(in, path);
}

void write_csv(std::ostream& out, const SampleMatrix& data) {
    for (std::size_t c = 0; c < data.cols(); ++c) out << (c ? "," : "") << data.label(c);
    out << '\n';
    char buf[64];
    for (std::size_t r = 0; r < data.rows(); ++r) {
        for (std::size_t c = 0; c < data.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", data.column(c)[r]);
            out << (c ? "," : "") << buf;
        }
        out << '\n';
    }
}

std::vector<std::vector<std::string>> read_partition(std::istream& in, const std::string& source) {
    std::vector<std::vector<std::string>> blocks;
    std::set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        std::vector<std::string> block;
        for (auto& label : split_fields(line)) {
            label = unquote(label);
            if (label.empty()) throw InputError(source + ": line " + std::to_string(line_no) + " has an empty label");
            if (!seen.insert(label).second)
                throw InputError(source + ": label '" + label + "' appears more than once");
            block.push_back(label);
        }
        blocks.push_back(std::move(block));
    }
    if (blocks.empty()) throw InputError(source + ": partition has no blocks");
    return blocks;
}

std::vector<std::vector<std::string>> read_partition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return read_partition(in, path);
}

void write_partition(std::ostream& out, const Partition& partition, const std::vector<std::string>& labels) {
    for (const auto& block : partition.canonical().blocks) {
        for (std::size_t i = 0; i < block.size(); ++i) out << (i ? "," : "") << labels.at(block[i]);
        out << '\n';
    }
}

std::string dendrogram_json(const Dendrogram& dendrogram) {
    nlohmann::ordered_json doc;
    doc["labels"] = dendrogram.labels;
    doc["merges"] = nlohmann::ordered_json::array();
    for (const auto& m : dendrogram.merges) {
        nlohmann::ordered_json entry;
        entry["left"] = m.left.indices();
        entry["right"] = m.right.indices();
        entry["height"] = m.height;
        entry["key"] = m.key.indices();
        doc["merges"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

Dendrogram parse_dendrogram_json(const std::string& text) {
    Dendrogram d;
    try {
        const auto doc = nlohmann::json::parse(text);
        d.labels = doc.at("labels").get<std::vector<std::string>>();
        for (const auto& entry : doc.at("merges")) {
            Merge m;
            m.left = VariableSet(entry.at("left").get<std::vector<std::size_t>>());
            m.right = VariableSet(entry.at("right").get<std::vector<std::size_t>>());
            m.height = entry.at("height").get<double>();
            m.key = VariableSet(entry.at("key").get<std::vector<std::size_t>>());
            d.merges.push_back(std::move(m));
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed dendrogram JSON: ") + e.what());
    }
    return d;
}

namespace {

std::string newick_label(const std::string& label) {
    if (label.find_first_of(" ():;,[]'\t") == std::string::npos) return label;
    std::string quoted = "'";
    for (char c : label) {
        if (c == '\'') quoted += '\'';
        quoted += c;
    }
    return quoted + "'";
}

void require_complete(const Dendrogram& d, const char* what) {
    if (d.labels.empty() || d.merges.size() + 1 != d.labels.size())
        throw InputError(std::string(what) + " needs a complete dendrogram");
}

}  // namespace

std::string dendrogram_newick(const Dendrogram& dendrogram) {
    require_complete(dendrogram, "Newick output");
    std::map<VariableSet, std::string> text;
    for (std::size_t i = 0; i < dendrogram.labels.size(); ++i) text[VariableSet{i}] = newick_label(dendrogram.labels[i]);
    char buf[64];
    for (const auto& m : dendrogram.merges) {
        std::snprintf(buf, sizeof buf, "%.17g", m.height);
        text[m.key] = "(" + text.at(m.left) + ":" + buf + "," + text.at(m.right) + ":" + buf + ")";
    }
    const auto& root = dendrogram.merges.empty() ? VariableSet{0} : dendrogram.merges.back().key;
    return text.at(root) + ";\n";
}

std::string dendrogram_svg(const Dendrogram& dendrogram) {
    require_complete(dendrogram, "SVG output");
    const std::size_t m = dendrogram.labels.size();

    // leaf order from a left-to-right walk of the tree
    std::map<VariableSet, const Merge*> by_key;
    for (const auto& merge : dendrogram.merges) by_key[merge.key] = &merge;
    std::vector<std::size_t> order;
    std::function<void(const VariableSet&)> walk = [&](const VariableSet& key) {
        const auto it = by_key.find(key);
        if (it == by_key.end()) {
            order.push_back(key[0]);
            return;
        }
        walk(it->second->left);
        walk(it->second->right);
    };
    if (m == 1) order.push_back(0);
    else walk(dendrogram.merges.back().key);

    double top = 0.0;
    for (const auto& merge : dendrogram.merges) top = std::max(top, merge.height);
    if (top <= 0.0) top = 1.0;

    const double left = 70.0, right = 20.0, upper = 40.0, plot_h = 300.0, spacing = 40.0;
    const double width = left + right + spacing * static_cast<double>(std::max<std::size_t>(m, 2));
    const double height = upper + plot_h + 90.0;
    auto y_of = [&](double h) { return upper + plot_h * (1.0 - h / top); };

    std::map<VariableSet, std::pair<double, double>> anchor;  // x, y of each subtree's top
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        anchor[VariableSet{order[pos]}] = {left + spacing * (static_cast<double>(pos) + 0.5), y_of(0.0)};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed6(width) << "\" height=\"" << fixed6(height)
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<line x1=\"" << fixed6(left - 10) << "\" y1=\"" << fixed6(y_of(0.0)) << "\" x2=\"" << fixed6(left - 10)
        << "\" y2=\"" << fixed6(y_of(top)) << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double h = top * t / 4.0;
        svg << "<text x=\"" << fixed6(left - 14) << "\" y=\"" << fixed6(y_of(h) + 4) << "\" text-anchor=\"end\">"
            << fixed6(h) << "</text>\n";
    }
    for (const auto& merge : dendrogram.merges) {
        const auto [xl, yl] = anchor.at(merge.left);
        const auto [xr, yr] = anchor.at(merge.right);
        const double y = y_of(merge.height);
        svg << "<path d=\"M " << fixed6(xl) << " " << fixed6(yl) << " L " << fixed6(xl) << " " << fixed6(y) << " L "
            << fixed6(xr) << " " << fixed6(y) << " L " << fixed6(xr) << " " << fixed6(yr)
            << "\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\"/>\n";
        anchor[merge.key] = {(xl + xr) / 2.0, y};
    }
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const double x = left + spacing * (static_cast<double>(pos) + 0.5);
        svg << "<text x=\"" << fixed6(x) << "\" y=\"" << fixed6(y_of(0.0) + 16) << "\" text-anchor=\"middle\">";
        for (char c : dendrogram.labels[order[pos]]) {
            if (c == '<') svg << "&lt;";
            else if (c == '>') svg << "&gt;";
            else if (c == '&') svg << "&amp;";
            else svg << c;
        }
        svg << "</text>\n";
    }
    if (dendrogram.has_inversions()) {
        svg << "<text x=\"" << fixed6(left) << "\" y=\"" << fixed6(height - 20)
            << "\" fill=\"firebrick\">warning: height inversions present; merges are drawn in order without "
               "reordering</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_validity_csv(std::ostream& out, const ValidityCurve& curve) {
    out << "k,adiam,msplit,silhouette,tradeoff_choice,silhouette_choice\n";
    if (curve.points.empty()) return;
    const std::size_t by_tradeoff = choose_k(curve, SelectionRule::tradeoff);
    const std::size_t by_silhouette = choose_k(curve, SelectionRule::silhouette);
    char buf[256];
    for (const auto& p : curve.points) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%d,%d\n", p.k, p.adiam, p.msplit, p.silhouette,
                      p.k == by_tradeoff ? 1 : 0, p.k == by_silhouette ? 1 : 0);
        out << buf;
    }
}

}  // namespace depclust
