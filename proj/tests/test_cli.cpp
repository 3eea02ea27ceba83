#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "test_util.hpp"

using namespace polyfunctor;
using namespace testutil;

namespace {

const std::string kCli = POLYFUNCTOR_CLI_PATH;
const std::string kData = POLYFUNCTOR_DATA_DIR;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + "'" + kCli + "' " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& file) { return "'" + kData + "/" + file + "'"; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Value column of a "key   value" table row.
std::string field(const std::string& table, const std::string& key) {
  std::istringstream in(table);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(key, 0) == 0) {
      std::string rest = line.substr(key.size());
      auto start = rest.find_first_not_of(' ');
      return start == std::string::npos ? "" : rest.substr(start);
    }
  return "";
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t c = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++c;
  return c;
}

}  // namespace

TEST(Document, RoundTripOnEveryDataFile) {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(kData)) {
    std::string text = slurp(entry.path());
    if (text.find("\"ambient_dim\"") == std::string::npos) continue;
    ++seen;
    PolytopeDocument d = parse_polytope_document(text);
    EXPECT_EQ(parse_polytope_document(serialize(d)), d) << entry.path();
    PolytopeDocument canon = to_document(to_polytope(d), d.name);
    EXPECT_EQ(serialize(parse_polytope_document(serialize(canon))), serialize(canon)) << entry.path();
    EXPECT_EQ(to_polytope(canon), to_polytope(d)) << entry.path();
  }
  EXPECT_GE(seen, 10u);
}

TEST(Document, ExactRationals) {
  PolytopeDocument d;
  d.name = "odd";
  d.ambient_dim = 2;
  d.vertices = std::vector<Vec>{{Q(-7, 3), Q(1, 1000003)}, {Q(5, 4), Q(0)}};
  d.inequalities = std::vector<Halfspace>{{{Q(1), Q(-2, 9)}, Q(13, 7)}};
  std::string text = serialize(d);
  EXPECT_NE(text.find("\"-7/3\""), std::string::npos);
  EXPECT_EQ(parse_polytope_document(text), d);
  PolytopeDocument dec = parse_polytope_document(R"({"ambient_dim": 1, "vertices": [["1.25"], ["-0.5"], [" 6/4 "]]})");
  EXPECT_EQ((*dec.vertices)[0][0], Q(5, 4));
  EXPECT_EQ((*dec.vertices)[1][0], Q(-1, 2));
  EXPECT_EQ((*dec.vertices)[2][0], Q(3, 2));
}

TEST(Document, Rejections) {
  EXPECT_THROW(parse_polytope_document("{"), InvalidArgument);
  EXPECT_THROW(parse_polytope_document(R"({"ambient_dim": 2})"), InvalidArgument);
  EXPECT_THROW(parse_polytope_document(R"({"ambient_dim": 2, "vertices": [["1"]]})"), InvalidArgument);
  EXPECT_THROW(parse_polytope_document(R"({"ambient_dim": 1, "vertices": [["1/0"]]})"), InvalidArgument);
  EXPECT_THROW(parse_polytope_document(R"({"ambient_dim": 1, "vertices": [[0.5]]})"), InvalidArgument);
  EXPECT_THROW(parse_polytope_document(R"({"ambient_dim": 1, "inequalities": [{"normal": ["1"]}]})"), InvalidArgument);
  PolytopeDocument h = parse_polytope_document(
      R"({"ambient_dim": 1, "inequalities": [{"normal": ["1"], "offset": "3"}, {"normal": ["-1"], "offset": "-1"}]})");
  EXPECT_EQ(to_polytope(h), segment(1, 3));
  PolytopeDocument open = parse_polytope_document(R"({"ambient_dim": 1, "inequalities": [{"normal": ["1"], "offset": "3"}]})");
  EXPECT_THROW(to_polytope(open), Error);
}

TEST(Document, MapRoundTrip) {
  AffineMap f({{Q(1, 2), Q(-3)}, {Q(0), Q(7, 5)}, {Q(1), Q(1)}}, {Q(2), Q(-1, 3), Q(0)}, 2);
  EXPECT_EQ(parse_map_document(serialize(to_document(f, "f"))), f);
  EXPECT_THROW(parse_map_document(R"({"domain_dim": 2, "matrix": [["1"]], "translation": ["0"]})"), InvalidArgument);
}

TEST(Svg, Shapes) {
  std::string sq = render_svg(cube(2));
  EXPECT_EQ(count(sq, "<path"), 1u);
  EXPECT_EQ(count(sq, " L "), 3u);
  EXPECT_NE(sq.find(" Z\""), std::string::npos);
  EXPECT_NE(sq.find("viewBox=\"0 0 400 400\""), std::string::npos);
  std::string pt = render_svg(Polytope::point(V({3, 4})));
  EXPECT_EQ(count(pt, "<circle"), 1u);
  EXPECT_EQ(count(pt, "<path"), 0u);
  EXPECT_EQ(count(render_svg(segment()), " L "), 1u);
  EXPECT_EQ(count(render_svg(cube(3)), " L "), 3u);  // drawn through (x0, x1)
  EXPECT_THROW(render_svg(cube(4)), DimensionTooHigh);
  EXPECT_EQ(render_svg(cube(2)), sq);
}

TEST(Svg, ChamberComplexCells) {
  Polytope pent = integer_pentagon();
  auto [s4, f4] = simplex_projection(pent.vertices());
  ChamberComplex cc = chamber_complex(f4, s4);
  std::string svg = render_svg(cc);
  EXPECT_EQ(count(svg, "<path"), cc.cells.size() + 1);
  std::set<std::string> fills;
  std::regex fill("fill=\"(hsl[^\"]*)\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), fill); it != std::sregex_iterator(); ++it)
    fills.insert((*it)[1]);
  EXPECT_EQ(fills.size(), cc.cells.size());
}

TEST(Cli, Hull) {
  CliRun r = cli("hull " + data("redundant_square.json"));
  ASSERT_EQ(r.code, 0);
  PolytopeDocument d = parse_polytope_document(r.out);
  EXPECT_EQ(d.vertices->size(), 4u);
  EXPECT_EQ(d.inequalities->size(), 4u);
}

TEST(Cli, HomOfSquareAndSegment) {
  CliRun r = cli("hom " + data("square.json") + " " + data("segment.json"));
  ASSERT_EQ(r.code, 0);
  Polytope h = to_polytope(parse_polytope_document(r.out));
  EXPECT_EQ(h.num_vertices(), 6u);
  EXPECT_EQ(h.num_facets(), 8u);
  Polytope sq = cube(2, -1, 1);
  EXPECT_TRUE(affinely_equivalent(h, bipyramid(polar(sq))).has_value());
}

TEST(Cli, ConstructionsMatchTheLibrary) {
  Polytope sq = cube(2, -1, 1);
  auto load = [](const CliRun& r) { return to_polytope(parse_polytope_document(r.out)); };
  EXPECT_EQ(load(cli("polar " + data("square.json"))), polar(sq));
  EXPECT_EQ(load(cli("bipyramid " + data("square.json"))), bipyramid(sq));
  EXPECT_EQ(load(cli("tensor " + data("segment.json") + " " + data("triangle.json"))), tensor_product(segment(), simplex(2)));
  EXPECT_EQ(load(cli("minkowski " + data("square.json") + " " + data("triangle.json") + " " + data("square.json"))),
            minkowski_sum({{1, sq}, {1, simplex(2)}, {1, sq}}));
  EXPECT_EQ(load(cli("fiber " + data("cube.json") + " --project 0,1")).dim(), 1u);
  EXPECT_EQ(load(cli("fiber " + data("simplex4.json") + " --map " + data("pentagon_projection.json"))).num_vertices(), 5u);
  CliRun fan = cli("normalfan " + data("square.json"));
  ASSERT_EQ(fan.code, 0);
  EXPECT_EQ(field(fan.out, "cones"), "9");
  EXPECT_EQ(field(fan.out, "maximal cones"), "4");
}

TEST(Cli, Secondary) {
  CliRun r = cli("secondary --ngon 5");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(to_polytope(parse_polytope_document(r.out)).num_vertices(), 5u);
  EXPECT_EQ(to_polytope(parse_polytope_document(cli("secondary " + data("pentagon.json")).out)).num_vertices(), 5u);
  EXPECT_EQ(cli("secondary").code, 2);
  EXPECT_EQ(cli("secondary " + data("redundant_square.json")).code, 2);
}

TEST(Cli, KernelsAndCokernels) {
  CliRun k = cli("kerstar " + data("cube.json") + " " + data("segment.json") + " --project 0,1");
  ASSERT_EQ(k.code, 0);
  EXPECT_EQ(to_polytope(parse_polytope_document(k.out)).dim(), 4u);
  CliRun s = cli("sigmahomev " + data("cube.json") + " " + data("segment.json") + " --project 0,1");
  ASSERT_EQ(s.code, 0);
  EXPECT_EQ(to_polytope(parse_polytope_document(s.out)).dim(), 2u);
  CliRun c = cli("coker " + data("segment.json") + " " + data("tetrahedron.json") + " --map " + data("midpoint_segment.json") +
              " --section");
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(field(c.out, "cokernel vertices"), "4");
  EXPECT_EQ(field(c.out, "representable"), "no");
}

TEST(Cli, SandwichCommands) {
  std::string setup = data("triangle.json") + " " + data("square.json") + " " + data("outer_square.json");
  EXPECT_EQ(cli("sandwich-check " + setup + " --g " + data("tilted_triangle.json")).out, "member\n");
  EXPECT_EQ(cli("sandwich-check " + setup + " --g " + data("corner_triangle.json")).out, "nonmember\n");
  EXPECT_EQ(cli("complement-check " + setup + " --g " + data("tilted_triangle.json")).out, "nonmember\n");
  EXPECT_EQ(cli("complement-check " + setup + " --g " + data("corner_triangle.json")).out, "member\n");
  CliRun sc = cli("signconditions " + setup + " --kind sandwich");
  ASSERT_EQ(sc.code, 0);
  EXPECT_EQ(field(sc.out, "max degree"), "2");
  CliRun w = cli("witness " + setup + " --seed 5");
  ASSERT_EQ(w.code, 0);
  EXPECT_EQ(field(w.out, "witness"), "found");
  EXPECT_EQ(field(w.out, "seed"), "5");
  EXPECT_EQ(cli("witness " + setup + " --seed 5", "POLYFUNCTOR_THREADS=1").out, w.out);
  EXPECT_EQ(cli("signconditions " + setup + " --kind neither").code, 2);
}

TEST(Cli, Rigidity) {
  EXPECT_EQ(field(cli("rigidity " + data("octahedron.json")).out, "defect"), "2");
  EXPECT_EQ(field(cli("rigidity " + data("cube.json")).out, "defect"), "0");
  EXPECT_EQ(field(cli("rigidity " + data("icosahedron.json")).out, "rigid"), "no");
}

TEST(Cli, ReproductionTablesAreStable) {
  CliRun a = cli("counterexample --n 2");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(field(a.out, "Hom(Q,Σf) vertices"), "6");
  EXPECT_GE(std::stoul(field(a.out, "min hom-fiber vertices")), 8u);
  EXPECT_EQ(cli("counterexample --n 2").out, a.out);
  CliRun t = cli("theorem62 --case 2");
  ASSERT_EQ(t.code, 0);
  EXPECT_EQ(field(t.out, "  affinely equivalent"), "yes");
  EXPECT_EQ(cli("theorem62 --case 2").out, t.out);
  EXPECT_EQ(cli("theorem62 --case 9").code, 2);
  EXPECT_EQ(cli("counterexample --n 7").code, 2);
}

TEST(Cli, RenderSvg) {
  CliRun sq = cli("render-svg " + data("square.json"));
  ASSERT_EQ(sq.code, 0);
  EXPECT_EQ(sq.out, render_svg(cube(2, -1, 1)));
  CliRun cc = cli("render-svg " + data("simplex4.json") + " --complex --map " + data("pentagon_projection.json"));
  ASSERT_EQ(cc.code, 0);
  CliRun cells = cli("fiber " + data("simplex4.json") + " --complex --map " + data("pentagon_projection.json"));
  EXPECT_EQ(count(cc.out, "<path"), std::stoul(field(cells.out, "cells")) + 1);
  EXPECT_EQ(cli("render-svg " + data("simplex4.json")).code, 2);
}

TEST(Cli, OutFile) {
  auto path = std::filesystem::temp_directory_path() / "polyfunctor_cli_out.json";
  std::filesystem::remove(path);
  CliRun r = cli("hull " + data("square.json") + " --out '" + path.string() + "'");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(parse_polytope_document(slurp(path)).vertices->size(), 4u);
  std::filesystem::remove(path);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("nonsense").code, 2);
  EXPECT_EQ(cli("hull").code, 2);
  EXPECT_EQ(cli("hull /nonexistent/file.json").code, 2);
  EXPECT_EQ(cli("polar " + data("segment.json")).code, 2);  // origin on the boundary
  EXPECT_EQ(cli("fiber " + data("cube.json")).code, 3);      // image of dimension 3
  EXPECT_EQ(cli("equivalent " + data("icosahedron.json") + " " + data("icosahedron_sheared.json") + " --budget 1").code, 4);
  CliRun ok = cli("equivalent " + data("icosahedron.json") + " " + data("icosahedron_sheared.json"));
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out.rfind("equivalent", 0), 0u);
  EXPECT_EQ(cli("--help").code, 0);
}
