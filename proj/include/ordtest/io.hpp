#ifndef ORDTEST_IO_HPP
#define ORDTEST_IO_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ordtest/regularity.hpp"
#include "ordtest/structures.hpp"

namespace ordtest {

// Parses "3", "-2/5" or "0.125" exactly.
Rat parse_rat(const std::string& text);

// Strings: one symbol label per character, or whitespace-separated tokens
// for multi-character labels. The alphabet is the sorted set of labels seen.
OrderedString read_string(std::istream& in);
void write_string(std::ostream& out, const OrderedString& s);

// Images: "rows cols" header then a row-major grid of labels.
Image read_image(std::istream& in);
void write_image(std::ostream& out, const Image& img);

// Graphs: "n |Sigma|" header then C(n,2) labels in pair order
// (1,2),(1,3),...,(n-1,n). Unseen symbols are padded to |Sigma|.
OrderedGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const OrderedGraph& g);

OrderedStructure read_structure_file(const std::string& path, const std::string& kind);

// Remaps both structures onto the union alphabet so they can be compared.
void align_alphabets(OrderedStructure& a, OrderedStructure& b);

// Regularity instances: "r k gamma |Sigma|" header, K density rows in index
// order, then "exceptions" and one 1-based tuple "i j i' j'" per line.
RegularityInstance read_regularity_instance(std::istream& in);
void write_regularity_instance(std::ostream& out, const RegularityInstance& inst);

// ---- CSV with a provenance comment block ----

struct CsvReport {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::map<std::string, std::string> provenance; // seed, config hash, version

    void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

// Body only (header + rows), used for byte-identity checks.
std::string csv_body(const CsvReport& report);
// Provenance comment block, then the body. `timestamp` adds a non-reproducible
// comment line outside the body.
void write_csv(std::ostream& out, const CsvReport& report, bool timestamp = true);

std::uint64_t fnv1a_hash(const std::string& text);

// ---- experiment configuration: "key = value" lines, [section] prefixes ----

struct ExperimentConfig {
    std::map<std::string, std::string> values;

    bool has(const std::string& key) const { return values.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::vector<std::int64_t> get_int_list(const std::string& key,
                                           std::vector<std::int64_t> fallback) const;
    std::vector<double> get_double_list(const std::string& key,
                                        std::vector<double> fallback) const;
    std::uint64_t require_seed() const;
    std::string canonical_text() const; // sorted key=value lines (for hashing)
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

} // namespace ordtest

#endif
