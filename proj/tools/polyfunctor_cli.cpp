// polyfunctor: command-line front end for the polytope library.
//
// Exit codes: 0 success, 2 input error, 3 scale limit, 4 search budget.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyfunctor/polyfunctor.hpp"

using namespace polyfunctor;

namespace {

constexpr int kInputError = 2;
constexpr int kScaleLimit = 3;
constexpr int kBudget = 4;

struct Globals {
  std::string out;
  std::size_t budget = 0;
  std::uint64_t seed = kDefaultSeed;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Polytope load(const std::string& path) { return to_polytope(parse_polytope_document(read_file(path))); }

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out);
  if (!out) throw InvalidArgument("cannot write " + g.out);
  out << text;
}

std::string doc(const Polytope& p, const std::string& name) { return serialize(to_document(p, name)); }

// Either a map document or a coordinate projection "i,j,...".
struct MapSpec {
  std::string file;
  std::string project;

  void add(CLI::App* cmd, const std::string& flag = "--map", const std::string& what = "f") {
    cmd->add_option(flag, file, "map document for " + what);
    cmd->add_option(flag == "--map" ? "--project" : flag + "-project", project,
                    "coordinate projection for " + what + ", e.g. 0,1");
  }
  AffineMap resolve(std::size_t domain_dim) const {
    if (!file.empty() && !project.empty()) throw InvalidArgument("give either a map document or a projection, not both");
    if (!file.empty()) {
      AffineMap f = parse_map_document(read_file(file));
      if (f.domain_dim() != domain_dim) throw DimensionMismatch("the map's domain does not match the polytope");
      return f;
    }
    if (project.empty()) return AffineMap::identity(domain_dim);
    std::vector<std::size_t> coords;
    std::stringstream ss(project);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      std::size_t c = 0;
      try {
        c = std::stoul(tok);
      } catch (const std::exception&) {
        throw InvalidArgument("bad coordinate '" + tok + "' in projection");
      }
      if (c >= domain_dim) throw InvalidArgument("projection coordinate out of range");
      coords.push_back(c);
    }
    return AffineMap::coordinate_projection(domain_dim, coords);
  }
};

std::string row(const std::string& key, const std::string& value) {
  std::size_t width = 0;
  for (unsigned char c : key) width += (c & 0xC0) != 0x80;
  return key + std::string(width < 28 ? 28 - width : 0, ' ') + " " + value + "\n";
}

std::string fan_table(const NormalFan& fan) {
  std::string out = row("dimension", std::to_string(fan.ambient_dim));
  out += row("cones", std::to_string(fan.cones.size()));
  out += row("maximal cones", std::to_string(fan.maximal_cones().size()));
  for (const auto& c : fan.cones) {
    std::string rays;
    for (const auto& r : c.rays) {
      rays += rays.empty() ? "(" : " (";
      for (std::size_t i = 0; i < r.size(); ++i) rays += (i ? "," : "") + r[i].get_str();
      rays += ")";
    }
    out += "cone dim " + std::to_string(c.dim) + ": " + (rays.empty() ? "{0}" : rays) + "\n";
  }
  return out;
}

std::string map_text(const AffineMap& f) {
  std::string out;
  for (std::size_t r = 0; r < f.codomain_dim(); ++r) {
    out += "  [";
    for (std::size_t c = 0; c < f.domain_dim(); ++c) out += (c ? " " : "") + to_string(f.matrix()[r][c]);
    out += " | " + to_string(f.translation()[r]) + "]\n";
  }
  return out;
}

SetKind parse_kind(const std::string& k) {
  if (k == "sandwich") return SetKind::Sandwich;
  if (k == "complement") return SetKind::Complement;
  throw InvalidArgument("kind must be sandwich or complement");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact polytope constructions: hom-polytopes, fiber polytopes, kernels, sandwiches"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--out", g.out, "write the result to this file");
  app.add_option("--budget", g.budget, "cap on equivalence or witness search work");
  app.add_option("--seed", g.seed, "seed for randomized searches");

  std::string name;
  app.add_option("--name", name, "name stored in output documents");

  // hull
  std::string hull_in;
  auto* hull = app.add_subcommand("hull", "canonical vertex and facet description");
  hull->add_option("polytope", hull_in)->required();

  // hom
  std::string hom_p, hom_q, hom_coords = "chart";
  bool hom_ambient = false;
  auto* hom = app.add_subcommand("hom", "hom-polytope Hom(P, Q)");
  hom->add_option("P", hom_p)->required();
  hom->add_option("Q", hom_q)->required();
  hom->add_option("--coords", hom_coords, "chart or affine")->check(CLI::IsMember({"chart", "affine"}));
  hom->add_flag("--ambient", hom_ambient, "images in ambient coordinates of Q");

  std::string a_in, b_in;
  auto* tensor = app.add_subcommand("tensor", "tensor product P ⊗ Q");
  tensor->add_option("P", a_in)->required();
  tensor->add_option("Q", b_in)->required();

  std::string one_in;
  auto* pol = app.add_subcommand("polar", "polar dual (origin must be interior)");
  pol->add_option("P", one_in)->required();
  auto* bip = app.add_subcommand("bipyramid", "bipyramid over P");
  bip->add_option("P", one_in)->required();
  auto* nf = app.add_subcommand("normalfan", "normal fan as a cone table");
  nf->add_option("P", one_in)->required();
  auto* rig = app.add_subcommand("rigidity", "face-wise affine maps versus affine maps");
  rig->add_option("P", one_in)->required();

  auto* eqv = app.add_subcommand("equivalent", "search for an affine isomorphism P → Q");
  eqv->add_option("P", a_in)->required();
  eqv->add_option("Q", b_in)->required();

  std::vector<std::string> mink_in;
  auto* mink = app.add_subcommand("minkowski", "Minkowski sum of two or more polytopes");
  mink->add_option("polytopes", mink_in)->required()->expected(2, -1);

  // fiber
  std::string fib_x, fib_walls = "edges";
  bool fib_complex = false;
  MapSpec fib_map;
  auto* fib = app.add_subcommand("fiber", "fiber polytope of f: X → f(X)");
  fib->add_option("X", fib_x)->required();
  fib_map.add(fib);
  fib->add_option("--walls", fib_walls, "edges or all")->check(CLI::IsMember({"edges", "all"}));
  fib->add_flag("--complex", fib_complex, "print the chamber complex instead");

  std::size_t sec_n = 0;
  std::string sec_in;
  auto* sec = app.add_subcommand("secondary", "secondary polytope of a convex polygon");
  sec->add_option("--ngon", sec_n, "points (i, i^2), i = 0..n-1");
  sec->add_option("points", sec_in, "polytope document whose vertices are the points");

  // kernel functors
  std::string k_x, k_z;
  MapSpec k_map;
  auto* ker = app.add_subcommand("kerstar", "maps g: Z → X with f∘g constant");
  ker->add_option("X", k_x)->required();
  ker->add_option("Z", k_z)->required();
  k_map.add(ker);
  auto* she = app.add_subcommand("sigmahomev", "fiber polytope of evaluation on the kernel polytope");
  she->add_option("X", k_x)->required();
  she->add_option("Z", k_z)->required();
  k_map.add(she);

  std::string c_x, c_y;
  bool c_section = false;
  MapSpec c_map;
  auto* cok = app.add_subcommand("coker", "projection of Y along Aff(f(X))");
  cok->add_option("X", c_x)->required();
  cok->add_option("Y", c_y)->required();
  c_map.add(cok);
  cok->add_flag("--section", c_section, "decide whether the projection has an affine section");

  // sandwich module
  std::string s_z, s_y, s_x, s_g, s_kind = "sandwich";
  MapSpec s_f;
  auto add_setup = [&](CLI::App* cmd) {
    cmd->add_option("Z", s_z)->required();
    cmd->add_option("Y", s_y)->required();
    cmd->add_option("X", s_x)->required();
    s_f.add(cmd, "--map", "f: Y → X");
  };
  auto* sck = app.add_subcommand("sandwich-check", "is f(Y) contained in g(Z)");
  add_setup(sck);
  sck->add_option("--g", s_g, "map document for g: Z → X")->required();
  auto* cck = app.add_subcommand("complement-check", "does g(Z) avoid f(Y), up to closure");
  add_setup(cck);
  cck->add_option("--g", s_g, "map document for g: Z → X")->required();
  auto* sgc = app.add_subcommand("signconditions", "polynomial sign conditions in the chart of Hom(Z, X)");
  add_setup(sgc);
  sgc->add_option("--kind", s_kind, "sandwich or complement");
  auto* wit = app.add_subcommand("witness", "search for two members whose midpoint is not a member");
  add_setup(wit);
  wit->add_option("--kind", s_kind, "sandwich or complement");

  std::size_t cx_n = 2;
  auto* cex = app.add_subcommand("counterexample", "slant-prism family: Hom(Q, Σf) against sampled hom-fibers");
  cex->add_option("--n", cx_n, "Q is a centrally symmetric 2n-gon, n = 2, 3, 4")->check(CLI::Range(2, 4));

  std::string t62_case = "all";
  auto* t62 = app.add_subcommand("theorem62", "ΣHom(Z, f)^ev against Hom(Z, Σf)");
  t62->add_option("--case", t62_case, "case number 1..8 or all");

  std::string svg_in;
  bool svg_complex = false;
  MapSpec svg_map;
  auto* svg = app.add_subcommand("render-svg", "draw a polytope or a chamber complex");
  svg->add_option("polytope", svg_in)->required();
  svg->add_flag("--complex", svg_complex, "draw the chamber complex of the map");
  svg_map.add(svg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  const std::size_t budget = g.budget ? g.budget : kDefaultSearchBudget;

  try {
    if (*hull) {
      emit(g, doc(load(hull_in), name));
    } else if (*hom) {
      HomOptions opts{hom_coords == "affine" ? DomainCoords::Affine : DomainCoords::Chart,
                      hom_ambient ? TargetCoords::Ambient : TargetCoords::Intrinsic};
      emit(g, doc(hom_polytope(load(hom_p), load(hom_q), opts).underlying(), name));
    } else if (*tensor) {
      emit(g, doc(tensor_product(load(a_in), load(b_in)), name));
    } else if (*eqv) {
      auto e = affinely_equivalent(load(a_in), load(b_in), budget);
      emit(g, e ? "equivalent\n" + map_text(*e) : std::string("not equivalent\n"));
    } else if (*pol) {
      emit(g, doc(polar(load(one_in)), name));
    } else if (*bip) {
      emit(g, doc(bipyramid(load(one_in)), name));
    } else if (*nf) {
      emit(g, fan_table(normal_fan(load(one_in))));
    } else if (*rig) {
      Polytope p = load(one_in);
      RigidityReport r = affine_rigidity(p);
      std::string out = row("vertices", std::to_string(p.num_vertices()));
      out += row("facets", std::to_string(p.num_facets()));
      out += row("facewise space dimension", std::to_string(r.facewise_space_dim));
      out += row("affine space dimension", std::to_string(r.affine_space_dim));
      out += row("defect", std::to_string(r.defect));
      out += row("rigid", r.rigid() ? "yes" : "no");
      if (r.witness) {
        std::string w;
        for (const auto& x : *r.witness) w += (w.empty() ? "" : " ") + to_string(x);
        out += row("witness", w);
      }
      emit(g, out);
    } else if (*mink) {
      std::vector<std::pair<Scalar, Polytope>> terms;
      for (const auto& f : mink_in) terms.emplace_back(1, load(f));
      emit(g, doc(minkowski_sum(terms), name));
    } else if (*fib) {
      Polytope x = load(fib_x);
      AffineMap f = fib_map.resolve(x.ambient_dim());
      WallSet walls = fib_walls == "all" ? WallSet::AllFaces : WallSet::Edges;
      if (fib_complex) {
        ChamberComplex cc = chamber_complex(f, x, walls);
        std::string out = row("cells", std::to_string(cc.cells.size()));
        for (std::size_t i = 0; i < cc.cells.size(); ++i) {
          std::string c;
          for (const auto& v : cc.centroids[i]) c += (c.empty() ? "" : " ") + to_string(v);
          out += "cell " + std::to_string(i) + ": vertices " + std::to_string(cc.cells[i].num_vertices()) + ", weight " +
                 to_string(cc.weights[i]) + ", centroid (" + c + ")\n";
        }
        emit(g, out);
      } else {
        emit(g, doc(fiber_polytope(f, x, walls), name));
      }
    } else if (*sec) {
      std::vector<Vec> pts;
      if (sec_n > 0 && !sec_in.empty()) throw InvalidArgument("give --ngon or a points document, not both");
      if (sec_n > 0) {
        pts = parabola_ngon(sec_n);
      } else if (!sec_in.empty()) {
        PolytopeDocument d = parse_polytope_document(read_file(sec_in));
        if (!d.vertices) throw InvalidArgument("the points document needs vertices");
        pts = *d.vertices;
      } else {
        throw InvalidArgument("secondary needs --ngon or a points document");
      }
      emit(g, doc(secondary_polytope(pts), name));
    } else if (*ker || *she) {
      Polytope x = load(k_x), z = load(k_z);
      AffineMap f = k_map.resolve(x.ambient_dim());
      emit(g, doc(*ker ? ker_star(f, x, z).kernel_polytope : sigma_hom_ev(f, x, z), name));
    } else if (*cok) {
      Polytope x = load(c_x), y = load(c_y);
      AffineMap f = c_map.resolve(x.ambient_dim());
      if (!c_section) {
        emit(g, doc(coker_object(f, x, y).cokernel, name));
      } else {
        Cokernel c = coker_object(f, x, y);
        auto [ok, sigma] = coker_representable(f, x, y);
        std::string out = row("cokernel dimension", std::to_string(c.cokernel.dim()));
        out += row("cokernel vertices", std::to_string(c.cokernel.num_vertices()));
        out += row("representable", ok ? "yes" : "no");
        if (sigma) out += "section\n" + map_text(*sigma);
        emit(g, out);
      }
    } else if (*sck || *cck || *sgc || *wit) {
      Polytope z = load(s_z), y = load(s_y), x = load(s_x);
      SandwichSetup s{z, y, s_f.resolve(y.ambient_dim()), x};
      if (*sck || *cck) {
        AffineMap gm = parse_map_document(read_file(s_g));
        emit(g, std::string(*sck ? (sandwich_member(gm, s) ? "member" : "nonmember")
                                 : to_string(complement_member(gm, s))) +
                    "\n");
      } else if (*sgc) {
        SignConditionSystem sys = emit_sign_conditions(s, parse_kind(s_kind));
        std::string out = row("kind", to_string(sys.kind));
        std::string vars;
        for (const auto& v : sys.variable_names) vars += (vars.empty() ? "" : " ") + v;
        out += row("variables", vars);
        out += row("clauses", std::to_string(sys.clauses.size()));
        out += row("max degree", std::to_string(sys.max_degree()));
        for (const auto& c : sys.clauses) {
          out += "clause " + c.provenance + "\n";
          for (const auto& a : c.atoms)
            out += "  " + a.p.to_string(sys.variable_names) + (a.strict ? " > 0" : " >= 0") + "\n";
        }
        emit(g, out);
      } else {
        SetKind kind = parse_kind(s_kind);
        std::size_t trials = g.budget ? g.budget : kDefaultWitnessBudget;
        auto w = nonconvexity_witness(s, kind, trials, g.seed);
        std::string out = row("kind", to_string(kind));
        out += row("seed", std::to_string(g.seed));
        out += row("trial budget", std::to_string(trials));
        out += row("witness", w ? "found" : "none");
        if (w) out += "g1\n" + map_text(w->first) + "g2\n" + map_text(w->second);
        emit(g, out);
      }
    } else if (*cex) {
      CounterexampleReport r = prism_counterexample(cx_n);
      std::string out = row("n", std::to_string(r.n));
      out += row("Hom(Q,Σf) vertices", std::to_string(r.hom_sigma_vertices));
      for (std::size_t i = 0; i < r.contractions.size(); ++i)
        out += row("hom-fiber vertices t=" + to_string(r.contractions[i]), std::to_string(r.hom_fiber_vertices[i]));
      out += row("min hom-fiber vertices", std::to_string(r.min_hom_fiber_vertices()));
      out += row("gap", std::to_string(static_cast<long>(r.min_hom_fiber_vertices()) -
                                       static_cast<long>(r.hom_sigma_vertices)));
      emit(g, out);
    } else if (*t62) {
      auto cases = theorem62_cases();
      std::vector<std::size_t> pick;
      if (t62_case == "all") {
        for (std::size_t i = 0; i < cases.size(); ++i) pick.push_back(i);
      } else {
        std::size_t id = 0;
        try {
          id = std::stoul(t62_case);
        } catch (const std::exception&) {
          throw InvalidArgument("case must be a number or all");
        }
        if (id < 1 || id > cases.size()) throw InvalidArgument("case out of range 1.." + std::to_string(cases.size()));
        pick.push_back(id - 1);
      }
      std::string out;
      for (auto i : pick) {
        const auto& [inst, z] = cases[i];
        Theorem62Report r = theorem62_report(inst.f, inst.x, z, budget);
        out += "case " + std::to_string(i + 1) + ": " + inst.name + ", Z of dimension " + std::to_string(z.dim()) + "\n";
        out += row("  ΣHom(Z,f)^ev", "dim " + std::to_string(r.sigma_hom_ev.dim()) + ", " +
                                         std::to_string(r.sigma_hom_ev.num_vertices()) + " vertices");
        out += row("  Hom(Z,Σf)", "dim " + std::to_string(r.hom_sigma.dim()) + ", " +
                                      std::to_string(r.hom_sigma.num_vertices()) + " vertices");
        out += row("  affinely equivalent", r.holds() ? "yes" : "no");
      }
      emit(g, out);
    } else if (*svg) {
      Polytope p = load(svg_in);
      if (svg_complex) {
        emit(g, render_svg(chamber_complex(svg_map.resolve(p.ambient_dim()), p)));
      } else {
        emit(g, render_svg(p));
      }
    }
  } catch (const ScaleLimitExceeded& e) {
    std::cerr << "polyfunctor: scale limit: " << e.what() << "\n";
    return kScaleLimit;
  } catch (const ImageDimTooHigh& e) {
    std::cerr << "polyfunctor: scale limit: " << e.what() << "\n";
    return kScaleLimit;
  } catch (const SearchBudgetExceeded& e) {
    std::cerr << "polyfunctor: budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "polyfunctor: " << e.what() << "\n";
    return kInputError;
  }
  return 0;
}
