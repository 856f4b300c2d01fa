// ramanujan: builders, analyzers and the SIDH demo on the command line.
// Exit status 0 on success, 1 on bad parameters or input, 2 otherwise.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ramanujan/criteria.hpp"
#include "ramanujan/graph.hpp"
#include "ramanujan/isogeny.hpp"
#include "ramanujan/lps.hpp"
#include "ramanujan/pizer.hpp"
#include "ramanujan/sidh.hpp"
#include "ramanujan/ssig.hpp"

using namespace ramanujan;
using nlohmann::json;
using ff::u64;

namespace {

// Exit status 1 without counting as a parameter error in the library.
struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write " + path);
  out << text;
}

// JSON report to `out`, or to stdout when no path was given.
void emit(const json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) std::cout << text;
  else write_file(out, text);
}

// Graph JSON at `out` and DOT next to it.
void emit_graph(const graph::LabeledMultigraph& g, const std::string& out) {
  write_file(out, graph::export_graph(g, graph::Format::json));
  std::filesystem::path dot(out);
  dot.replace_extension(".dot");
  write_file(dot.string(), graph::export_graph(g, graph::Format::dot));
}

json report_json(const graph::StructureReport& r) {
  json j;
  j["vertices"] = r.vertices;
  j["edges"] = r.edges;
  j["regular_degree"] = r.regular_degree ? json(*r.regular_degree) : json(nullptr);
  j["connected"] = r.connected;
  j["bipartite"] = r.bipartite;
  j["girth"] = r.girth ? json(*r.girth) : json(nullptr);
  j["loops"] = r.loop_count;
  j["multi_edges"] = r.multi_edge_count;
  j["simple"] = r.simple();
  return j;
}

std::string report_line(const graph::StructureReport& r) {
  std::ostringstream os;
  os << r.vertices << " vertices, " << r.edges << " edges, ";
  if (r.regular_degree) os << *r.regular_degree << "-regular";
  else os << "irregular";
  os << ", " << (r.connected ? "connected" : "disconnected") << ", " << (r.simple() ? "simple" : "not simple") << ", "
     << (r.bipartite ? "bipartite" : "non-bipartite");
  return os.str();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

json fp2_json(const ff::Fp2& v) { return json::array({v.c0(), v.c1()}); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Supersingular isogeny graphs, LPS graphs and toy SIDH"};
  app.require_subcommand(1);

  std::string out, in, preset = "p431", transcript, branch, method = "velu";
  u64 p = 0, ell = 2, l = 0, count = 0, seed = 1;
  int m = 0, criterion = 0;
  bool directed = false, sparse = false;

  auto* ssig_cmd = app.add_subcommand("ssig", "supersingular isogeny graphs")->require_subcommand(1);
  auto* ssig_build = ssig_cmd->add_subcommand("build", "build the l-isogeny graph over F_{p^2}");
  ssig_build->add_option("--p", p, "characteristic")->required();
  ssig_build->add_option("--ell", ell, "isogeny degree")->required();
  ssig_build->add_flag("--directed", directed, "one arc per kernel");
  ssig_build->add_option("--method", method, "velu or modpoly")->check(CLI::IsMember({"velu", "modpoly"}));
  ssig_build->add_option("--out", out, "graph JSON path (DOT written alongside)")->required();

  auto* lps_cmd = app.add_subcommand("lps", "LPS Cayley graphs")->require_subcommand(1);
  auto* lps_build = lps_cmd->add_subcommand("build", "build X^{l,p}");
  lps_build->add_option("--l", l)->required();
  lps_build->add_option("--p", p)->required();
  lps_build->add_option("--out", out, "graph JSON path (DOT written alongside)")->required();

  auto* graph_cmd = app.add_subcommand("graph", "graph metrics")->require_subcommand(1);
  auto* graph_analyze = graph_cmd->add_subcommand("analyze", "structure report");
  graph_analyze->add_option("--in", in)->required();
  graph_analyze->add_option("--out", out);
  auto* graph_spectrum = graph_cmd->add_subcommand("spectrum", "adjacency spectrum");
  graph_spectrum->add_option("--in", in)->required();
  graph_spectrum->add_flag("--sparse", sparse, "power iteration for the second eigenvalue only");
  graph_spectrum->add_option("--out", out);

  auto* chains_cmd = app.add_subcommand("chains", "isogeny chains")->require_subcommand(1);
  auto* chains_count = chains_cmd->add_subcommand("count", "count length-m chains from the base curve");
  chains_count->add_option("--ell", ell)->required();
  chains_count->add_option("--m", m)->required();
  chains_count->add_option("--p", p)->required();
  chains_count->add_option("--out", out);

  auto* corr_cmd = app.add_subcommand("correspondence", "generators against Bruhat-Tits neighbours");
  corr_cmd->add_option("--l", l)->required();
  corr_cmd->add_option("--branch", branch, "e, -e, or a residue of eps mod l")->required();
  corr_cmd->add_option("--out", out);

  auto* pizer_cmd = app.add_subcommand("pizer", "6-regular Brandt graph admissibility")->require_subcommand(1);
  auto* pizer_scan = pizer_cmd->add_subcommand("scan", "scan the first N primes");
  pizer_scan->add_option("--count", count)->required();
  pizer_scan->add_option("--out", out);
  auto* pizer_check = pizer_cmd->add_subcommand("check", "check one prime");
  pizer_check->add_option("--p", p)->required();
  pizer_check->add_option("--out", out);

  auto* sidh_cmd = app.add_subcommand("sidh", "toy SIDH")->require_subcommand(1);
  auto* sidh_demo = sidh_cmd->add_subcommand("demo", "one honest exchange; transcript to --out");
  sidh_demo->add_option("--preset", preset)->check(CLI::IsMember({"p431"}));
  sidh_demo->add_option("--seed", seed);
  sidh_demo->add_option("--out", out);
  auto* sidh_attack = sidh_cmd->add_subcommand("attack", "recover the shared j from a transcript");
  sidh_attack->add_option("--transcript", transcript)->required();
  sidh_attack->add_option("--out", out);

  auto* verify_cmd = app.add_subcommand("verify", "run one acceptance criterion");
  verify_cmd->add_option("--criterion", criterion)->required()->check(CLI::Range(1, criteria::kCount));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*ssig_build) {
      ssig::SsigParams params{p, ell, method == "velu" ? ssig::Method::velu : ssig::Method::modular_polynomial,
                              directed};
      const auto g = ssig::build(params);
      emit_graph(g, out);
      std::cout << "ssig p=" << p << " ell=" << ell << (directed ? " directed" : "") << ": "
                << report_line(graph::analyze(g)) << "\n";
    } else if (*lps_build) {
      const auto g = lps::build_lps_graph(l, p);
      emit_graph(g, out);
      std::cout << "lps l=" << l << " p=" << p << ": " << report_line(graph::analyze(g)) << "\n";
    } else if (*graph_analyze) {
      const auto rep = graph::analyze(graph::parse_json(read_file(in)));
      emit(report_json(rep), out);
      std::cout << in << ": " << report_line(rep) << "\n";
    } else if (*graph_spectrum) {
      const auto g = graph::parse_json(read_file(in));
      const auto rep = graph::analyze(g);
      json j;
      if (sparse) {
        const auto est = graph::second_eigenvalue_sparse(g);
        j = {{"second_eigenvalue", est.value},
             {"residual", est.residual},
             {"error_estimate", est.error_estimate},
             {"iterations", est.iterations}};
        std::cout << in << ": second |lambda| = " << fmt(est.value) << " (residual " << fmt(est.residual) << ")";
      } else {
        const auto eig = graph::full_spectrum(g);
        double second = 0;
        for (std::size_t i = 0; i + 1 < eig.size(); ++i) second = std::max(second, std::abs(eig[i]));
        if (rep.bipartite && eig.size() >= 2) {
          second = 0;
          for (std::size_t i = 1; i + 1 < eig.size(); ++i) second = std::max(second, std::abs(eig[i]));
        }
        j = {{"eigenvalues", eig}, {"top", eig.back()}, {"second_abs", second}};
        std::cout << in << ": top " << fmt(eig.back()) << ", second |lambda| = " << fmt(second);
      }
      if (rep.regular_degree && *rep.regular_degree >= 2) {
        const double bound = 2 * std::sqrt(static_cast<double>(*rep.regular_degree - 1));
        j["ramanujan_bound"] = bound;
        const double second = sparse ? j["second_eigenvalue"].get<double>() : j["second_abs"].get<double>();
        j["ramanujan"] = second <= bound + 1e-9;
        std::cout << ", bound " << fmt(bound) << (second <= bound + 1e-9 ? " (ramanujan)" : " (not ramanujan)");
      }
      std::cout << "\n";
      emit(j, out);
    } else if (*chains_count) {
      const auto start = ec::rational_torsion_model(ec::find_supersingular_curve(p), ell);
      const auto k = isogeny::enumerate_chains(start, ell, m);
      emit({{"p", p},
            {"ell", ell},
            {"m", m},
            {"without_backtracking", k.without_backtracking},
            {"with_backtracking", k.with_backtracking},
            {"closed_form", {{"cyclic", ec::ipow(ell, m) + ec::ipow(ell, m - 1)},
                             {"total", (ec::ipow(ell, m + 1) - 1) / (ell - 1)}}}},
           out);
      std::cout << "chains ell=" << ell << " m=" << m << " p=" << p << ": " << k.without_backtracking << "/"
                << k.with_backtracking << "\n";
    } else if (*corr_cmd) {
      const auto base = lps::correspondence_constants(l);
      u64 eps = 0;
      if (branch == "e") eps = base.e;
      else if (branch == "-e") eps = l - base.e;
      else {
        try {
          eps = std::stoull(branch);
        } catch (const std::exception&) {
          throw ParameterError("--branch must be e, -e or an integer");
        }
      }
      const auto t = lps::generator_matrix_correspondence(l, eps);
      const auto ms = lps::tree_neighbor_matrices(l);
      json rows = json::array();
      bool all = true;
      for (u64 h = 0; h <= l; ++h) {
        const bool ok = lps::is_l_integral(t.alpha[h], ms[h], l, t.eps);
        all = all && ok;
        rows.push_back({{"h", h}, {"alpha", t.alpha[h].str()}, {"l_integral", ok}});
      }
      emit({{"l", l}, {"a", t.a}, {"b", t.b}, {"e", t.e}, {"eps", t.eps}, {"table", rows}}, out);
      std::cout << "correspondence l=" << l << " eps=" << t.eps << ":";
      for (const auto& q : t.alpha) std::cout << " " << q.str();
      std::cout << (all ? " (all l-integral)" : " (integrality FAILED)") << "\n";
      if (!all) return 2;
    } else if (*pizer_scan) {
      const auto res = pizer::scan_primes(count);
      emit({{"primes_scanned", res.primes_scanned},
            {"last_prime", res.last_prime},
            {"admissible_count", res.admissible.size()},
            {"admissible", res.admissible}},
           out);
      std::cout << "pizer scan " << count << " primes (up to " << res.last_prime << "): " << res.admissible.size()
                << " admissible";
      if (!res.admissible.empty()) std::cout << ", min " << res.admissible.front();
      std::cout << "\n";
    } else if (*pizer_check) {
      const bool ok = pizer::is_admissible_6regular(p);
      const u64 h = pizer::eichler_class_number(p);
      emit({{"p", p}, {"admissible", ok}, {"H", h}}, out);
      std::cout << "p=" << p << ": admissible=" << (ok ? "true" : "false") << ", H=" << h << "\n";
    } else if (*sidh_demo) {
      const auto params = sidh::preset(preset);
      std::mt19937_64 rng(seed);
      const auto [ma, na] = sidh::random_secret(params, sidh::Side::A, rng);
      const auto [mb, nb] = sidh::random_secret(params, sidh::Side::B, rng);
      const auto A = sidh::keygen(params, sidh::Side::A, ma, na);
      const auto B = sidh::keygen(params, sidh::Side::B, mb, nb);
      const auto ja = sidh::derive_shared(params, A, B.pub), jb = sidh::derive_shared(params, B, A.pub);
      if (!(ja == jb)) throw InternalError("sidh demo: the two sides disagree");
      const std::string text = sidh::transcript_json(params, A.pub, B.pub);
      if (out.empty()) std::cout << text;
      else write_file(out, text);
      std::cout << "sidh " << preset << " seed=" << seed << ": shared j = " << ja.label() << "\n";
    } else if (*sidh_attack) {
      const auto t = sidh::parse_transcript(read_file(transcript));
      const auto res = sidh::attack(t.params, t.pub_a, t.pub_b);
      json j = {{"recovered", res.j.has_value()}, {"attempts", res.attempts}};
      if (res.j) j["j"] = fp2_json(*res.j);
      else j["reason"] = res.reason;
      emit(j, out);
      if (!res.j) throw Failure("attack failed after " + std::to_string(res.attempts) + " paths: " + res.reason);
      std::cout << "sidh attack: recovered j = " << res.j->label() << " after " << res.attempts << " path(s)\n";
    } else if (*verify_cmd) {
      const auto r = criteria::run(criterion);
      std::cout << criteria::format(r) << "\n";
      return r.pass ? 0 : 2;
    }
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
