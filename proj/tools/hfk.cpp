// Command-line driver: compute bigraded knot invariants from braid words,
// event scripts, or PD codes; enumerate Kauffman states; and run the
// verification suites for the underlying algebra and bimodules.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "hfk/verify.hpp"

using namespace hfk;

namespace {

struct InputFlags {
  std::string braid, pd, events_file;
};

void add_input_flags(CLI::App* cmd, InputFlags& in) {
  auto* b = cmd->add_option("--braid", in.braid, "braid word, e.g. \"2 [1,1,1]\"");
  auto* p = cmd->add_option("--pd", in.pd, "PD code, e.g. \"X(1,4,2,5) ...\"");
  auto* e = cmd->add_option("--events", in.events_file, "event script file");
  b->excludes(p)->excludes(e);
  p->excludes(e);
}

BridgeDiagram load_diagram(const InputFlags& in) {
  int sources = (!in.braid.empty()) + (!in.pd.empty()) + (!in.events_file.empty());
  if (sources != 1) throw ParseError("exactly one input source required", 0, 0);
  if (!in.braid.empty()) return braid_to_bridge(parse_braid(in.braid));
  if (!in.pd.empty()) return pd_to_bridge(parse_pd(in.pd));
  std::ifstream f(in.events_file);
  if (!f) throw ParseError("cannot open " + in.events_file, 0, 0);
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return parse_events(text);
}

bool logging() { return std::getenv("HFK_LOG") != nullptr; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bigraded knot invariants from bordered algebras"};
  app.require_subcommand(1);

  InputFlags in;
  long budget = 10000;
  bool json = false, diagnostics = false;

  auto* compute = app.add_subcommand("compute", "compute KHa and KHm of a knot");
  add_input_flags(compute, in);
  compute->add_flag("--json", json, "emit the JSON result schema");
  compute->add_flag("--diagnostics", diagnostics, "print stage sizes");
  compute->add_option("--budget", budget, "tensor search budget per generator");

  auto* states = app.add_subcommand("states", "list Kauffman states and the state sum");
  add_input_flags(states, in);

  auto* alex = app.add_subcommand("alexander", "print the Alexander polynomial");
  add_input_flags(alex, in);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  VerifyOptions vopt;
  verify->add_option("suite", suite, "one of: relations braid trident pair dd-inverse moves")
      ->required();
  verify->add_option("--m", vopt.max_m, "largest algebra index");
  int max_weight = 3;
  verify->add_option("--max-weight", max_weight, "input weight bound for DA checks");
  verify->add_option("--budget", vopt.budget, "tensor search budget");
  verify->add_option("--jobs", vopt.jobs, "parallel verification jobs");

  auto* selftest = app.add_subcommand("selftest", "quick end-to-end check");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compute->parsed()) {
      BridgeDiagram d = load_diagram(in);
      PipelineOptions opt;
      opt.budget = budget;
      opt.collect_stages = diagnostics || logging();
      KnotInvariants inv = compute_invariants(d, opt);
      if (opt.collect_stages) {
        std::cerr << "stage sizes:";
        for (int s : inv.stage_sizes) std::cerr << " " << s;
        std::cerr << "\n";
        std::cerr << "kauffman states: " << kauffman_states(d).size() << "\n";
      }
      if (json) {
        std::cout << inv.json() << "\n";
      } else {
        std::cout << "P(m,t) = " << inv.poincare() << "\n";
        std::cout << "KHa:\n";
        for (auto& [key, dim] : inv.kha.dims)
          std::cout << "  maslov " << key.first << "  alexander " << key.second / 2
                    << "  dim " << dim << "\n";
        std::cout << "KHm: ";
        for (auto [dd, s] : inv.khm_towers)
          std::cout << "F[U](" << dd << "," << s << ") ";
        for (auto [dd, s, k] : inv.khm_torsion)
          std::cout << "F[U]/U^" << k << "(" << dd << "," << s << ") ";
        std::cout << "\n";
        std::cout << "Alexander = " << inv.alexander.str() << "\n";
        std::cout << "Euler identity: " << (inv.euler_ok ? "ok" : "FAILED") << "\n";
      }
      return inv.euler_ok ? 0 : 1;
    }
    if (states->parsed()) {
      BridgeDiagram d = load_diagram(in);
      auto ss = kauffman_states(d);
      Laurent sum;
      for (auto& s : ss) {
        std::cout << "A = " << (s.alex2 % 2 ? std::to_string(s.alex2) + "/2"
                                            : std::to_string(s.alex2 / 2))
                  << "  M = " << s.maslov << "\n";
        sum.add(s.alex2, s.maslov % 2 ? -1 : 1);
      }
      std::cout << ss.size() << " states, sum = " << sum.str() << "\n";
      return 0;
    }
    if (alex->parsed()) {
      BridgeDiagram d = load_diagram(in);
      std::cout << alexander_from_states(d).str() << "\n";
      return 0;
    }
    if (verify->parsed()) {
      vopt.weight2 = 2 * max_weight;
      SuiteResult r = run_verify_suite(suite, vopt);
      std::cout << r.name << ": " << (r.ok ? "ok" : "FAILED") << " (" << r.cases
                << " cases, " << r.seconds << "s)\n";
      if (!r.ok) std::cout << r.failures;
      return r.ok ? 0 : 1;
    }
    if (selftest->parsed()) {
      auto u = compute_invariants(braid_to_bridge(parse_braid("1 []")));
      auto t = compute_invariants(braid_to_bridge(parse_braid("2 [-1,-1,-1]")));
      bool ok = u.kha.total() == 1 && u.euler_ok && t.kha.total() == 3 && t.euler_ok &&
                t.kha.dims.count({2, 2}) > 0;
      std::cout << (ok ? "selftest ok" : "selftest FAILED") << "\n";
      return ok ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const SearchBudgetExceeded& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
