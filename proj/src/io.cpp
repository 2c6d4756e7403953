#include "ordtest/io.hpp"

#include <algorithm>
#include <chrono>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace ordtest {

Rat parse_rat(const std::string& text) {
    if (text.empty()) throw parameter_error("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        return Rat(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        if (frac.size() > 15) frac = frac.substr(0, 15);
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        bool neg = !whole.empty() && whole[0] == '-';
        std::int64_t w = whole.empty() || whole == "-" ? 0 : std::stoll(whole);
        std::int64_t f = frac.empty() ? 0 : std::stoll(frac);
        std::int64_t num = (neg ? -1 : 1) * (std::abs(w) * den + f);
        return Rat(num, den);
    }
    return Rat(std::stoll(text));
}

namespace {

std::vector<std::string> tokenize_line(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

Alphabet alphabet_from_labels(const std::vector<std::string>& labels, int min_size = 0) {
    std::set<std::string> uniq(labels.begin(), labels.end());
    std::vector<std::string> sorted(uniq.begin(), uniq.end());
    int pad = 0;
    while (int(sorted.size()) < min_size) {
        std::string cand = "s" + std::to_string(pad++);
        if (!uniq.count(cand)) { sorted.push_back(cand); uniq.insert(cand); }
    }
    std::sort(sorted.begin(), sorted.end());
    return Alphabet(sorted);
}

std::vector<int> map_labels(const Alphabet& a, const std::vector<std::string>& labels) {
    std::vector<int> out;
    out.reserve(labels.size());
    for (const auto& l : labels) {
        int idx = a.index_of(l);
        if (idx < 0) throw parameter_error("unknown symbol label: " + l);
        out.push_back(idx);
    }
    return out;
}

std::vector<std::string> read_tokens(std::istream& in, std::size_t count) {
    std::vector<std::string> out;
    std::string tok;
    while (out.size() < count && in >> tok) out.push_back(tok);
    if (out.size() < count) throw parameter_error("file ended early");
    return out;
}

} // namespace

OrderedString read_string(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        // skip blanks and comments
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::vector<std::string> toks = tokenize_line(line);
        std::vector<std::string> labels;
        if (toks.size() == 1 && toks[0].size() > 1) {
            for (char c : toks[0]) labels.push_back(std::string(1, c));
        } else {
            labels = toks;
        }
        Alphabet a = alphabet_from_labels(labels);
        return make_string(a, map_labels(a, labels));
    }
    throw parameter_error("no string found in input");
}

void write_string(std::ostream& out, const OrderedString& s) {
    bool single = true;
    for (const auto& l : s.alphabet.labels())
        if (l.size() != 1) single = false;
    for (int i = 0; i < s.n(); ++i) {
        if (!single && i) out << ' ';
        out << s.alphabet.label(s.entries[std::size_t(i)]);
    }
    out << '\n';
}

Image read_image(std::istream& in) {
    std::string first;
    if (!(in >> first)) throw parameter_error("empty image file");
    if (first == "P1" || first == "P2") {
        // plain PBM/PGM: width height [maxval], then pixel values
        int w = 0, h = 0;
        if (!(in >> w >> h)) throw parameter_error("PGM needs width and height");
        if (first == "P2") {
            int maxval = 0;
            if (!(in >> maxval)) throw parameter_error("PGM needs a maxval");
        }
        std::vector<std::string> labels = read_tokens(in, std::size_t(w) * std::size_t(h));
        Alphabet a = alphabet_from_labels(labels);
        return make_image(a, h, w, map_labels(a, labels));
    }
    int rows = std::stoi(first), cols = 0;
    if (!(in >> cols)) throw parameter_error("image needs a 'rows cols' header");
    std::vector<std::string> labels = read_tokens(in, std::size_t(rows) * std::size_t(cols));
    Alphabet a = alphabet_from_labels(labels);
    return make_image(a, rows, cols, map_labels(a, labels));
}

void write_image(std::ostream& out, const Image& img) {
    out << img.rows << ' ' << img.cols << '\n';
    for (int r = 0; r < img.rows; ++r) {
        for (int c = 0; c < img.cols; ++c) {
            if (c) out << ' ';
            out << img.alphabet.label(img.at(r, c));
        }
        out << '\n';
    }
}

OrderedGraph read_graph(std::istream& in) {
    int n = 0, sigma = 0;
    if (!(in >> n >> sigma)) throw parameter_error("graph needs an 'n |Sigma|' header");
    std::vector<std::string> labels =
        read_tokens(in, std::size_t(n) * std::size_t(n - 1) / 2);

    // numeric labels in [0, sigma) keep their value as the index
    bool numeric = true;
    for (const auto& l : labels) {
        if (l.empty() || l.find_first_not_of("0123456789") != std::string::npos) {
            numeric = false;
            break;
        }
        if (std::stoi(l) >= sigma) numeric = false;
        if (!numeric) break;
    }
    if (numeric) {
        std::vector<std::string> syms;
        for (int i = 0; i < sigma; ++i) syms.push_back(std::to_string(i));
        Alphabet a(syms);
        return make_graph(a, n, map_labels(a, labels));
    }
    Alphabet a = alphabet_from_labels(labels, sigma);
    if (a.size() != sigma)
        throw parameter_error("graph body uses more symbols than the declared |Sigma|");
    return make_graph(a, n, map_labels(a, labels));
}

void write_graph(std::ostream& out, const OrderedGraph& g) {
    out << g.n << ' ' << g.alphabet.size() << '\n';
    for (std::size_t i = 0; i < g.colors.size(); ++i) {
        if (i) out << (i % 16 == 0 ? '\n' : ' ');
        out << g.alphabet.label(g.colors[i]);
    }
    out << '\n';
}

OrderedStructure read_structure_file(const std::string& path, const std::string& kind) {
    std::ifstream in(path);
    if (!in) throw parameter_error("cannot open " + path);
    if (kind == "string") return read_string(in);
    if (kind == "image") return read_image(in);
    if (kind == "graph") return read_graph(in);
    throw parameter_error("unknown structure kind: " + kind);
}

void align_alphabets(OrderedStructure& a, OrderedStructure& b) {
    auto labels_of = [](const OrderedStructure& f) -> const std::vector<std::string>& {
        if (const auto* s = std::get_if<OrderedString>(&f)) return s->alphabet.labels();
        if (const auto* g = std::get_if<OrderedGraph>(&f)) return g->alphabet.labels();
        return std::get<Image>(f).alphabet.labels();
    };
    std::vector<std::string> merged = labels_of(a);
    for (const auto& l : labels_of(b)) merged.push_back(l);
    Alphabet uni = alphabet_from_labels(merged);

    auto remap = [&](OrderedStructure& f) {
        auto convert = [&](const Alphabet& old, std::vector<int>& entries) {
            for (int& e : entries) e = uni.index_of(old.label(e));
        };
        if (auto* s = std::get_if<OrderedString>(&f)) {
            convert(s->alphabet, s->entries);
            s->alphabet = uni;
        } else if (auto* g = std::get_if<OrderedGraph>(&f)) {
            convert(g->alphabet, g->colors);
            g->alphabet = uni;
        } else {
            Image& img = std::get<Image>(f);
            convert(img.alphabet, img.pixels);
            img.alphabet = uni;
        }
    };
    remap(a);
    remap(b);
}

RegularityInstance read_regularity_instance(std::istream& in) {
    int r = 0, k = 0, sigma = 0;
    std::string gamma_text;
    if (!(in >> r >> k >> gamma_text >> sigma))
        throw parameter_error("instance needs an 'r k gamma |Sigma|' header");
    std::int64_t K = binom2(r) * std::int64_t(k) * k * sigma;
    std::vector<Rat> densities;
    densities.reserve(std::size_t(K));
    std::string tok;
    for (std::int64_t i = 0; i < K; ++i) {
        if (!(in >> tok)) throw parameter_error("instance density table ended early");
        densities.push_back(parse_rat(tok));
    }
    std::vector<std::array<int, 4>> exceptions;
    if (in >> tok) {
        if (tok != "exceptions") throw parameter_error("expected 'exceptions' footer");
        int i, j, i2, j2;
        while (in >> i >> j >> i2 >> j2)
            exceptions.push_back({i - 1, j - 1, i2 - 1, j2 - 1});
    }
    return RegularityInstance(parse_rat(gamma_text), r, k, sigma, std::move(densities),
                              std::move(exceptions));
}

void write_regularity_instance(std::ostream& out, const RegularityInstance& inst) {
    out << inst.r() << ' ' << inst.k() << ' ' << inst.gamma().str() << ' '
        << inst.alphabet_size() << '\n';
    const auto& d = inst.raw_densities();
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) out << (i % 8 == 0 ? '\n' : ' ');
        out << d[i].str();
    }
    out << '\n';
    out << "exceptions\n";
    for (const auto& e : inst.exceptions())
        out << e[0] + 1 << ' ' << e[1] + 1 << ' ' << e[2] + 1 << ' ' << e[3] + 1 << '\n';
}

std::string csv_body(const CsvReport& report) {
    std::ostringstream out;
    for (std::size_t i = 0; i < report.header.size(); ++i) {
        if (i) out << ',';
        out << report.header[i];
    }
    out << '\n';
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
    return out.str();
}

void write_csv(std::ostream& out, const CsvReport& report, bool timestamp) {
    for (const auto& [key, value] : report.provenance)
        out << "# " << key << ": " << value << '\n';
    if (timestamp) {
        auto now = std::chrono::system_clock::now().time_since_epoch();
        out << "# timestamp: "
            << std::chrono::duration_cast<std::chrono::seconds>(now).count() << '\n';
    }
    out << csv_body(report);
}

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string ExperimentConfig::get(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

std::int64_t ExperimentConfig::get_int(const std::string& key, std::int64_t fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : std::stoll(it->second);
}

double ExperimentConfig::get_double(const std::string& key, double fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : std::stod(it->second);
}

namespace {

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',' || c == ' ') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

} // namespace

std::vector<std::int64_t> ExperimentConfig::get_int_list(
    const std::string& key, std::vector<std::int64_t> fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    std::vector<std::int64_t> out;
    for (const auto& tok : split_list(it->second)) out.push_back(std::stoll(tok));
    return out;
}

std::vector<double> ExperimentConfig::get_double_list(const std::string& key,
                                                      std::vector<double> fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    std::vector<double> out;
    for (const auto& tok : split_list(it->second)) out.push_back(std::stod(tok));
    return out;
}

std::uint64_t ExperimentConfig::require_seed() const {
    auto it = values.find("seed");
    if (it == values.end()) throw parameter_error("config requires a seed");
    return std::stoull(it->second);
}

std::string ExperimentConfig::canonical_text() const {
    std::ostringstream out;
    for (const auto& [k, v] : values) out << k << "=" << v << '\n';
    return out.str();
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line, section;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        if (line.front() == '[' && line.back() == ']') {
            section = line.substr(1, line.size() - 2);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw parameter_error("config line needs key = value");
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t");
            auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!section.empty()) key = section + "." + key;
        cfg.values[key] = value;
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parameter_error("cannot open " + path);
    return parse_config(in);
}

} // namespace ordtest
