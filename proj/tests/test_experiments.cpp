#include "doctest.h"

#include <sstream>

#include "ordtest/experiments.hpp"
#include "ordtest/io.hpp"
#include "ordtest/metrics.hpp"
#include "ordtest/properties.hpp"

using namespace ordtest;

TEST_CASE("rational parsing") {
    CHECK(parse_rat("3") == Rat(3));
    CHECK(parse_rat("-2/5") == Rat(-2, 5));
    CHECK(parse_rat("0.125") == Rat(1, 8));
    CHECK(parse_rat("1.5") == Rat(3, 2));
    CHECK_THROWS_AS(parse_rat(""), parameter_error);
}

TEST_CASE("config parsing with sections") {
    std::istringstream in(
        "experiment = string-er\n"
        "# a comment\n"
        "seed = 42\n"
        "[grid]\n"
        "sizes = 8, 16,24\n");
    ExperimentConfig cfg = parse_config(in);
    CHECK(cfg.get("experiment", "") == "string-er");
    CHECK(cfg.require_seed() == 42);
    CHECK(cfg.get_int_list("grid.sizes", {}) == std::vector<std::int64_t>{8, 16, 24});
    CHECK(cfg.get_int("missing", 7) == 7);
}

TEST_CASE("structure files round-trip") {
    OrderedString s = binary_string("010011");
    std::ostringstream out;
    write_string(out, s);
    std::istringstream in(out.str());
    OrderedString back = read_string(in);
    CHECK(back.entries == s.entries);

    Image img = chessboard_image(4);
    std::ostringstream oimg;
    write_image(oimg, img);
    std::istringstream iimg(oimg.str());
    Image bimg = read_image(iimg);
    CHECK(bimg.pixels == img.pixels);

    OrderedGraph g = make_graph(Alphabet::binary(), 5,
                                {0, 1, 0, 1, 1, 0, 0, 1, 0, 1});
    std::ostringstream og;
    write_graph(og, g);
    std::istringstream ig(og.str());
    OrderedGraph bg = read_graph(ig);
    CHECK(bg.n == 5);
    CHECK(bg.colors == g.colors);
}

TEST_CASE("graphs with undeclared symbols are rejected") {
    std::istringstream in("3 1\na b c\n");
    CHECK_THROWS_AS(read_graph(in), parameter_error);
}

TEST_CASE("numeric graph labels keep their value as the symbol index") {
    std::istringstream in("3 3\n2 0 1\n");
    OrderedGraph g = read_graph(in);
    CHECK(g.colors == std::vector<int>{2, 0, 1});
}

TEST_CASE("PGM images parse") {
    std::istringstream in("P1\n3 2\n0 1 0\n1 0 1\n");
    Image img = read_image(in);
    CHECK(img.rows == 2);
    CHECK(img.cols == 3);
    CHECK(img.at(0, 1) == 1);
    CHECK(img.at(1, 0) == 1);
}

TEST_CASE("alphabet alignment remaps both structures onto the union") {
    Alphabet ab({"a", "b"});
    Alphabet bc({"b", "c"});
    OrderedStructure x = make_string(ab, {0, 1});     // "ab"
    OrderedStructure y = make_string(bc, {0, 1});     // "bc"
    align_alphabets(x, y);
    const auto& xs = std::get<OrderedString>(x);
    const auto& ys = std::get<OrderedString>(y);
    CHECK(xs.alphabet.size() == 3);
    CHECK(xs.alphabet == ys.alphabet);
    CHECK(xs.entries == std::vector<int>{0, 1}); // a, b
    CHECK(ys.entries == std::vector<int>{1, 2}); // b, c
}

TEST_CASE("generator determinism and planted patterns") {
    OrderedStructure a = generate("string", 16, "uniform", 99);
    OrderedStructure b = generate("string", 16, "uniform", 99);
    OrderedStructure c = generate("string", 16, "uniform", 100);
    CHECK(structures_equal(a, b));
    CHECK(!structures_equal(a, c));

    OrderedStructure m = generate("string", 40, "property:monotone", 7);
    CHECK(monotone_string().contains(m));

    OrderedStructure board = generate("image", 8, "planted:chessboard", 1);
    const Image& img = std::get<Image>(board);
    for (int r = 0; r < 8; ++r)
        for (int col = 0; col + 1 < 8; ++col)
            CHECK(img.at(r, col) != img.at(r, col + 1)); // alternating grid

    CHECK_THROWS_AS(generate("string", 8, "planted:disk", 1), parameter_error);
    CHECK_THROWS_AS(generate("string", 8, "nonsense", 1), parameter_error);
}

TEST_CASE("experiment registry") {
    auto names = list_experiments();
    CHECK(names.size() == 12);
    for (const char* want :
         {"mixing-equivalence", "earthmover-mixing", "canonical-stability", "er-transfer",
          "simupiece-exact", "simupiece-mc", "string-er", "boundary-lemmas",
          "boundary-er-scaling", "chessboard-certificate", "qk-statistic-bound",
          "regularity-checkers"})
        CHECK(is_experiment(want));
    ExperimentConfig cfg;
    cfg.values["seed"] = "1";
    CHECK_THROWS_AS(run_experiment("no-such-experiment", cfg), parameter_error);
}

TEST_CASE("identical config and seed give a byte-identical CSV body") {
    ExperimentConfig cfg;
    cfg.values["seed"] = "20240817";
    cfg.values["n_max"] = "5";
    ExperimentResult a = run_experiment("mixing-equivalence", cfg);
    ExperimentResult b = run_experiment("mixing-equivalence", cfg);
    CHECK(csv_body(a.csv) == csv_body(b.csv));
    CHECK(a.all_pass());
    CHECK(a.csv.provenance.count("config-hash") == 1);
    CHECK(a.csv.provenance.count("seed") == 1);
}

TEST_CASE("empty size grid produces an empty report and passes") {
    ExperimentConfig cfg;
    cfg.values["seed"] = "5";
    cfg.values["sizes"] = "";
    ExperimentResult res = run_experiment("boundary-er-scaling", cfg);
    CHECK(res.csv.rows.empty());
    CHECK(res.all_pass());
}

TEST_CASE("a scaled-down criterion run passes end to end") {
    ExperimentConfig cfg;
    cfg.values["seed"] = "20240817";
    cfg.values["graphs"] = "5";
    ExperimentResult res = run_experiment("canonical-stability", cfg);
    CHECK(res.all_pass());
    CHECK(res.csv.rows.size() == 10); // graphs x {q=2, q=3}
}

TEST_CASE("csv writer emits provenance and body") {
    CsvReport rep;
    rep.header = {"a", "b"};
    rep.add_row({"1", "2"});
    rep.provenance["seed"] = "7";
    std::ostringstream out;
    write_csv(out, rep, false);
    CHECK(out.str() == "# seed: 7\na,b\n1,2\n");
}
