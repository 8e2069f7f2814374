#pragma once

// File formats: data CSV, partition files, dendrogram JSON/Newick/SVG and
// the validity-curve CSV.

#include "depclust/clustering.hpp"
#include "depclust/sample_matrix.hpp"
#include "depclust/validation.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace depclust {

/// Comma-separated values with a mandatory header row. Missing or
/// non-numeric cells raise InputError naming the line and column; constant
/// columns raise DegenerateColumnError.
SampleMatrix read_csv(std::istream& in, const std::string& source = "<input>");
SampleMatrix read_csv_file(const std::string& path);

/// Values are written with 17 significant digits, so reading them back
/// reproduces the matrix exactly.
void write_csv(std::ostream& out, const SampleMatrix& data);

/// One block per line, labels separated by commas. Blank lines and `#`
/// comments are skipped. Returns the blocks as label lists.
std::vector<std::vector<std::string>> read_partition(std::istream& in, const std::string& source = "<input>");
std::vector<std::vector<std::string>> read_partition_file(const std::string& path);

void write_partition(std::ostream& out, const Partition& partition, const std::vector<std::string>& labels);

/// {"labels": [...], "merges": [{"left": [...], "right": [...], "height": h, "key": [...]}]}
/// with keys as column-index arrays.
std::string dendrogram_json(const Dendrogram& dendrogram);
Dendrogram parse_dendrogram_json(const std::string& text);

/// Newick tree; each subtree's branch length is the height of the merge
/// that absorbs it. Needs a complete dendrogram.
std::string dendrogram_newick(const Dendrogram& dendrogram);

/// Static drawing with merge heights on the vertical axis. Inversions are
/// drawn as they occur and flagged with a note.
std::string dendrogram_svg(const Dendrogram& dendrogram);

/// Header `k,adiam,msplit,silhouette,tradeoff_choice,silhouette_choice`;
/// the two choice columns hold 1 on the row chosen by that rule.
void write_validity_csv(std::ostream& out, const ValidityCurve& curve);

}  // namespace depclust
