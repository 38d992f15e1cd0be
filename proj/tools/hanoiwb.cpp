// hanoiwb: command-line workbench for Hanoi groups, their limit spaces and
// the Hanoi networks. One invocation runs one computation.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include "hanoi/contraction.hpp"
#include "hanoi/fractal.hpp"
#include "hanoi/generators.hpp"
#include "hanoi/io.hpp"
#include "hanoi/networks.hpp"
#include "hanoi/schreier.hpp"

namespace {

using namespace hanoi;

enum Exit { ok = 0, usage = 1, computation = 2, not_contracting = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string group;
  std::string file;
  std::string closure;
  std::string format;
  std::string out;
  std::string k_range = "3";
  int n = 2;
  int m = 2;
  long N = 15;
  std::size_t cap = default_nucleus_cap;
  int depth = 4;
};

std::string full(double x) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
  return os.str();
}

void emit(const Options &o, const std::string &text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f)
    throw std::runtime_error("cannot write " + o.out);
  f << text;
}

void write_file(const std::string &path, const std::string &text) {
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw std::runtime_error("cannot write " + path);
  f << text;
}

GeneratorSet load(const Options &o) {
  if (o.group.empty() == o.file.empty())
    throw UsageError("give exactly one of --group or --file");
  GeneratorSet s = o.file.empty() ? resolve_group(o.group) : load_group_file(o.file);
  if (o.closure.empty() || o.closure == "none")
    return s;
  if (o.closure == "full")
    return symmetry_closure(s, Symmetry::full);
  if (o.closure == "rotational")
    return symmetry_closure(s, Symmetry::rotational);
  if (o.closure == "dihedral")
    return symmetry_closure(s, Symmetry::dihedral);
  throw UsageError("unknown closure: " + o.closure);
}

std::pair<int, int> k_range(const std::string &text) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      int k = std::stoi(text);
      return {k, k};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::logic_error &) {
    throw UsageError("malformed --k value: " + text);
  }
}

std::string join(const std::vector<std::string> &words, const std::string &sep) {
  std::string s;
  for (std::size_t i = 0; i < words.size(); ++i)
    s += (i ? sep : "") + words[i];
  return s;
}

std::string describe(const SubsetAnalysis &a) {
  std::ostringstream os;
  os << "T = {" << join(a.subset, ", ") << "}, Q = " << a.essential.to_string()
     << ", Fix(T) = " << a.fixed.to_string();
  return os.str();
}

std::string describe(const Witness &w) {
  std::ostringstream os;
  os << "g = " << join(w.word, "*") << ", i = " << w.i << ", j = " << w.j << ", n = " << w.n
     << ", m = " << w.m << " (g^" << w.n << "|_" << w.j << " = g^" << w.m << ")";
  return os.str();
}

// group ------------------------------------------------------------------------------

int group_check(const Options &o) {
  const auto s = load(o);
  const auto star = check_star(s);
  std::ostringstream os;
  os << "generators: " << s.non_identity().size() << " (k = " << s.degree() << ")\n";
  if (star.holds) {
    os << "verdict: contracting\n";
  } else {
    const auto &v = *star.violation;
    os << "verdict: non-contracting\n";
    os << "violation: " << describe(v.subset) << ", j = " << v.j
       << ", Orb_T(j) = " << v.subset.orbit_of(v.j).to_string() << "\n";
    if (auto w = find_witness(s, o.depth))
      os << "witness: " << describe(*w) << " [verified]\n";
    else
      os << "witness: none up to length " << o.depth << "\n";
  }
  emit(o, os.str());
  return ok;
}

Nucleus nucleus_or_throw(const Options &o) { return nucleus(load(o), o.cap); }

int group_nucleus(const Options &o) {
  const auto n = nucleus_or_throw(o);
  const auto moore = moore_diagram(n);
  const auto patterns = equivalence_patterns(n);
  std::ostringstream report;
  for (const auto &p : patterns)
    if (!p.diagonal())
      report << p.to_string() << "\n";
  if (!o.out.empty()) {
    write_file(o.out + ".nucleus.json", nucleus_to_json(n).dump(2) + "\n");
    write_file(o.out + ".moore.dot", to_dot(moore, "moore"));
    write_file(o.out + ".patterns.txt", report.str());
    std::cout << "nucleus: " << n.size() << " elements\n";
    return ok;
  }
  if (o.format == "dot") {
    std::cout << to_dot(moore, "moore");
  } else if (o.format == "csv") {
    std::cout << to_edge_csv(moore);
  } else if (o.format == "patterns") {
    std::cout << report.str();
  } else {
    std::cout << nucleus_to_json(n).dump(2) << "\n";
  }
  return ok;
}

int group_moore(const Options &o) {
  const auto moore = moore_diagram(nucleus_or_throw(o));
  emit(o, o.format == "csv" ? to_edge_csv(moore) : to_dot(moore, "moore"));
  return ok;
}

// schreier ---------------------------------------------------------------------------

int schreier_cmd(const Options &o) {
  const auto s = load(o);
  const auto g = schreier(s, o.n);
  const auto t = root_transitivity(s);
  std::ostringstream summary;
  summary << "vertices: " << g.graph.nodes.size() << "\n"
          << "edges: " << g.graph.edges.size() - g.loop_count << "\n"
          << "loops: " << g.loop_count << "\n"
          << "connected: " << (g.graph.connected() ? "yes" : "no") << "\n"
          << "root-transitive: " << (t.transitive ? "yes" : "no") << "\n";
  if (o.format == "csv")
    emit(o, schreier_csv(g));
  else if (o.format == "dot")
    emit(o, to_dot(g.graph, "schreier"));
  else
    emit(o, summary.str());
  if (!o.format.empty())
    std::cerr << summary.str();
  return ok;
}

// fractal ----------------------------------------------------------------------------

int fractal_dims(const Options &o) {
  auto [lo, hi] = k_range(o.k_range);
  if (lo < 3 || hi < lo)
    throw UsageError("--k must be a range within k >= 3");
  std::ostringstream os;
  os << "k,r,lambda_raw,d_H,d_S\n";
  for (int k = lo; k <= hi; ++k) {
    auto row = dimension_row(k);
    os << k << ',' << row.r.to_string() << ',' << row.lambda_raw.to_string() << ','
       << full(row.d_hausdorff) << ',' << full(row.d_spectral) << '\n';
  }
  emit(o, os.str());
  return ok;
}

int fractal_renorm(const Options &o) {
  const int k = k_range(o.k_range).first;
  const auto hs = renormalize(k);
  std::ostringstream os;
  os << "k," << k << "\n"
     << "r," << hs.r.to_string() << "\n"
     << "lambda_raw," << hs.lambda_raw.to_string() << "\n"
     << "lambda_numeric," << full(hs.lambda_numeric) << "\n"
     << "regular," << (hs.regular() ? "yes" : "no") << "\n";
  for (Eigen::Index i = 0; i < hs.schur.rows(); ++i) {
    os << "schur";
    for (Eigen::Index j = 0; j < hs.schur.cols(); ++j)
      os << ',' << full(hs.schur(i, j));
    os << '\n';
  }
  emit(o, os.str());
  return ok;
}

int fractal_resistance(const Options &o) {
  const int k = k_range(o.k_range).first;
  const auto hs = renormalize(k);
  const auto lg = level_energy(hs, o.m);
  std::ostringstream os;
  os << "x,y,resistance\n";
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      os << "p" << a << ",p" << b << ','
         << full(effective_resistance(lg.H, lg.points.index_of({{}, a}), lg.points.index_of({{}, b})))
         << '\n';
  os << "\nm,diameter,ratio\n";
  for (const auto &row : cell_diameter_scaling(hs, o.m))
    os << row.m << ',' << full(row.diameter) << ',' << full(row.ratio) << '\n';
  emit(o, os.str());
  return ok;
}

int fractal_points(const Options &o) {
  const int k = k_range(o.k_range).first;
  const auto ifs = build_ifs(build_simplex(k));
  const auto lp = attractor_points(ifs, o.m);
  std::ostringstream os;
  os << "address";
  for (int d = 0; d < k - 1; ++d)
    os << ",x" << d;
  os << '\n';
  for (std::size_t i = 0; i < lp.addresses.size(); ++i) {
    os << address_string(lp.addresses[i]);
    for (Eigen::Index d = 0; d < lp.coords[i].size(); ++d)
      os << ',' << full(lp.coords[i](d));
    os << '\n';
  }
  emit(o, os.str());
  return ok;
}

// net --------------------------------------------------------------------------------

void emit_graph(const Options &o, const WeightedGraph &g, const std::string &name,
                const std::vector<Point2> *coords = nullptr) {
  if (o.format == "dot")
    emit(o, to_dot(g, name));
  else if (o.format == "coords" && coords)
    emit(o, coordinates_csv(g, *coords));
  else
    emit(o, to_edge_csv(g));
}

int net_verify(const Options &o) {
  const auto iso = verify_isomorphism(o.n);
  std::ostringstream os;
  os << "n," << o.n << "\n"
     << "nodes," << ((2L << o.n) - 1) << "\n"
     << "constructive," << (iso.constructive ? "yes" : "no") << "\n"
     << "kinds," << (iso.kinds_match ? "yes" : "no") << "\n"
     << "oracle," << (iso.oracle ? "yes" : "no") << "\n";
  bool good = iso.ok();
  if (o.n <= 8) {
    const auto minor = verify_minor(o.n);
    const auto dist = distortion_report(o.n);
    os << "minor," << (minor.ok() ? "yes" : "no") << "\n"
       << "deleted_edges," << minor.deleted_edges << "\n"
       << "min_ratio," << full(dist.min_ratio) << "\n"
       << "bound," << full(dist.bound) << "\n";
    good = good && minor.ok();
  }
  emit(o, os.str());
  return good ? ok : computation;
}

void add_group_options(CLI::App *cmd, Options &o) {
  cmd->add_option("--group", o.group, "family name (Hanoi(k), Hc(k), S(k,q), Runder(k,n), Rover(k,n)) or inline JSON");
  cmd->add_option("--file", o.file, "JSON group definition file");
  cmd->add_option("--closure", o.closure, "symmetry closure: none, full, rotational, dihedral");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Hanoi groups workbench"};
  app.require_subcommand(1);
  Options o;
  int status = ok;
  std::function<int()> action;

  auto *group = app.add_subcommand("group", "contraction, nucleus and Moore diagram");
  group->require_subcommand(1);
  auto *check = group->add_subcommand("check", "decide contraction");
  add_group_options(check, o);
  check->add_option("--depth", o.depth, "witness search length")->check(CLI::PositiveNumber);
  check->add_option("--out", o.out);
  check->callback([&] { action = [&] { return group_check(o); }; });
  auto *nuc = group->add_subcommand("nucleus", "nucleus, Moore diagram and equivalence patterns");
  add_group_options(nuc, o);
  nuc->add_option("--cap", o.cap)->check(CLI::PositiveNumber);
  nuc->add_option("--format", o.format, "json, dot, csv or patterns");
  nuc->add_option("--out", o.out, "output prefix");
  nuc->callback([&] { action = [&] { return group_nucleus(o); }; });
  auto *moore = group->add_subcommand("moore", "Moore diagram of the nucleus");
  add_group_options(moore, o);
  moore->add_option("--cap", o.cap)->check(CLI::PositiveNumber);
  moore->add_option("--format", o.format, "dot or csv");
  moore->add_option("--out", o.out);
  moore->callback([&] { action = [&] { return group_moore(o); }; });

  auto *sch = app.add_subcommand("schreier", "level-n Schreier graph");
  add_group_options(sch, o);
  sch->add_option("--n", o.n)->check(CLI::PositiveNumber);
  sch->add_option("--format", o.format, "dot or csv");
  sch->add_option("--out", o.out);
  sch->callback([&] { action = [&] { return schreier_cmd(o); }; });

  auto *fractal = app.add_subcommand("fractal", "limit space analysis");
  fractal->require_subcommand(1);
  auto *dims = fractal->add_subcommand("dims", "Hausdorff and spectral dimensions");
  dims->add_option("--k", o.k_range, "k or a range a..b");
  dims->add_option("--out", o.out);
  dims->callback([&] { action = [&] { return fractal_dims(o); }; });
  auto *renorm = fractal->add_subcommand("renorm", "renormalization factor and Schur complement");
  renorm->add_option("--k", o.k_range);
  renorm->add_option("--out", o.out);
  renorm->callback([&] { action = [&] { return fractal_renorm(o); }; });
  auto *res = fractal->add_subcommand("resistance", "boundary resistances and cell diameters");
  res->add_option("--k", o.k_range);
  res->add_option("--m", o.m)->check(CLI::NonNegativeNumber);
  res->add_option("--out", o.out);
  res->callback([&] { action = [&] { return fractal_resistance(o); }; });
  auto *pts = fractal->add_subcommand("points", "level-m points with addresses");
  pts->add_option("--k", o.k_range);
  pts->add_option("--m", o.m)->check(CLI::NonNegativeNumber);
  pts->add_option("--out", o.out);
  pts->callback([&] { action = [&] { return fractal_points(o); }; });

  auto *net = app.add_subcommand("net", "Hanoi networks");
  net->require_subcommand(1);
  auto *hn3 = net->add_subcommand("hn3", "HN3 on nodes 1..N");
  hn3->add_option("--N", o.N)->check(CLI::PositiveNumber);
  hn3->add_option("--format", o.format, "csv or dot");
  hn3->add_option("--out", o.out);
  hn3->callback([&] { action = [&] { emit_graph(o, build_hn3(o.N).graph, "HN3"); return 0; }; });
  auto *hn4 = net->add_subcommand("hn4", "HN4 on nodes -N..N");
  hn4->add_option("--N", o.N)->check(CLI::PositiveNumber);
  hn4->add_option("--format", o.format, "csv or dot");
  hn4->add_option("--out", o.out);
  hn4->callback([&] { action = [&] { emit_graph(o, build_hn4(o.N).graph, "HN4"); return 0; }; });
  auto *aut = net->add_subcommand("automaton", "state network H_n");
  aut->add_option("--n", o.n)->check(CLI::PositiveNumber);
  aut->add_option("--format", o.format, "csv, dot or coords");
  aut->add_option("--out", o.out);
  aut->callback([&] {
    action = [&] {
      const auto h = build_automaton_network(o.n);
      emit_graph(o, h.graph, "H", &h.coords);
      return 0;
    };
  });
  auto *minor = net->add_subcommand("minor", "minor H'_n");
  minor->add_option("--n", o.n)->check(CLI::PositiveNumber);
  minor->add_option("--format", o.format, "csv, dot or coords");
  minor->add_option("--out", o.out);
  minor->callback([&] {
    action = [&] {
      const auto h = build_minor(o.n);
      emit_graph(o, h.graph, "Hprime", &h.coords);
      return 0;
    };
  });
  auto *verify = net->add_subcommand("verify", "HN3 against H'_n: isomorphism, minor, distortion");
  verify->add_option("--n", o.n)->check(CLI::PositiveNumber);
  verify->add_option("--out", o.out);
  verify->callback([&] { action = [&] { return net_verify(o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }
  try {
    status = action ? action() : usage;
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const NotContracting &e) {
    std::cerr << "error: " << e.what() << "; " << describe(e.violation().subset)
              << ", j = " << e.violation().j << "\n";
    return not_contracting;
  } catch (const nlohmann::json::exception &e) {
    std::cerr << "error: malformed group definition: " << e.what() << "\n";
    return usage;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return computation;
  }
  return status;
}
