#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ctxrt/behavior.hpp"
#include "ctxrt/convert.hpp"
#include "ctxrt/error.hpp"
#include "ctxrt/monotone.hpp"
#include "ctxrt/ncycle.hpp"
#include "ctxrt/preorder.hpp"
#include "ctxrt/scenario.hpp"
#include "ctxrt/wiring.hpp"

using namespace ctxrt;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Behavior load_behavior(const std::string& file) {
  std::filesystem::path path(file);
  auto resolve = [&](const std::string& rel) { return read_json_file(path.parent_path() / rel); };
  try {
    return behavior_from_json(read_json_file(path), resolve);
  } catch (const json::exception& e) {
    throw InputError(file + ": " + e.what());
  }
}

Scenario load_scenario(const std::string& file) {
  try {
    return scenario_from_json(read_json_file(file));
  } catch (const json::exception& e) {
    throw InputError(file + ": " + e.what());
  }
}

Rational parse_flag_rational(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const InputError& e) {
    throw InputError(std::string(flag) + ": " + e.what());
  }
}

class Emitter {
 public:
  void set_path(std::string p) { path_ = std::move(p); }

  void text(const std::string& s) const {
    if (path_.empty()) {
      std::cout << s;
      return;
    }
    std::ofstream out(path_);
    if (!out) throw InputError("cannot write " + path_);
    out << s;
  }

  void emit(const json& j) const { text(j.dump(2) + "\n"); }

 private:
  std::string path_;
};

int run(int argc, char** argv) {
  CLI::App app{"Exact toolkit for contextuality resources on n-cycle scenarios"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output;
  app.add_option("-o,--output", output, "Write the artifact to this file instead of stdout");

  Emitter emitter;
  int exit_code = kExitOk;
  std::function<void()> action;

  // scenario
  auto* scenario_cmd = app.add_subcommand("scenario", "Build scenarios");
  scenario_cmd->require_subcommand(1);
  auto* scenario_cycle = scenario_cmd->add_subcommand("cycle", "n-cycle scenario");
  int scenario_n = 0;
  scenario_cycle->add_option("--n", scenario_n, "Cycle length")->required();
  scenario_cycle->callback([&] { action = [&] { emitter.emit(to_json(make_cycle_scenario(scenario_n))); }; });

  // behavior make
  auto* behavior_cmd = app.add_subcommand("behavior", "Build behaviors");
  behavior_cmd->require_subcommand(1);
  auto* behavior_make = behavior_cmd->add_subcommand("make", "Named n-cycle behaviors");
  std::string make_kind;
  int make_n = 0;
  std::size_t make_k = 0;
  std::string make_alpha = "0";
  std::string make_gamma = "0";
  behavior_make->add_option("kind", make_kind, "pr | mixed | npr | f | b")
      ->required()
      ->check(CLI::IsMember({"pr", "mixed", "npr", "f", "b"}));
  behavior_make->add_option("--n", make_n, "Cycle length")->required();
  behavior_make->add_option("--k", make_k, "Facet index in canonical order");
  behavior_make->add_option("--alpha", make_alpha, "alpha for f and b (p/q)");
  behavior_make->add_option("--gamma", make_gamma, "gamma for b (p/q)");
  behavior_make->callback([&] {
    action = [&] {
      if (make_kind == "mixed") {
        emitter.emit(to_json(make_maximally_mixed(make_n)));
        return;
      }
      if (make_n < 3) throw InputError("--n must be at least 3");
      auto f = OmegaFunctional::from_index(make_n, make_k);
      Rational alpha = parse_flag_rational(make_alpha, "--alpha");
      Rational gamma = parse_flag_rational(make_gamma, "--gamma");
      if (make_kind == "pr") emitter.emit(to_json(make_pr(f)));
      if (make_kind == "npr") emitter.emit(to_json(make_npr(f)));
      if (make_kind == "f") emitter.emit(to_json(make_f_alpha(f, alpha)));
      if (make_kind == "b") emitter.emit(to_json(make_b_alpha_gamma(f, alpha, gamma)));
    };
  });

  // check
  auto* check_cmd = app.add_subcommand("check", "Non-disturbance and noncontextuality checks");
  std::string check_kind, check_file;
  check_cmd->add_option("kind", check_kind, "nd | nc")->required()->check(CLI::IsMember({"nd", "nc"}));
  check_cmd->add_option("file", check_file, "Behavior JSON")->required();
  check_cmd->callback([&] {
    action = [&] {
      Behavior b = load_behavior(check_file);
      if (auto v = validate(b); !v.ok) throw InputError(v.message);
      if (check_kind == "nd") {
        auto r = is_nondisturbing(b);
        json j = {{"check", "nd"}, {"verdict", r.nondisturbing ? "nondisturbing" : "disturbing"}};
        if (!r.nondisturbing) {
          const auto& ms = b.scenario().measurements();
          j["witness"] = {{"contexts", {r.contexts->first, r.contexts->second}}, {"overlap", json::array()}};
          for (auto m : r.overlap) j["witness"]["overlap"].push_back(ms[m]);
          exit_code = kExitNegative;
        }
        emitter.emit(j);
      } else {
        auto r = is_noncontextual(b);
        json j = {{"check", "nc"}, {"verdict", r.noncontextual ? "noncontextual" : "contextual"}};
        if (r.section) j["global_section"] = to_json(*r.section, b.scenario());
        if (!r.noncontextual) exit_code = kExitNegative;
        emitter.emit(j);
      }
    };
  });

  // omega
  auto* omega_cmd = app.add_subcommand("omega", "Facet functionals of an n-cycle behavior");
  std::string omega_file;
  bool omega_all = false;
  omega_cmd->add_option("file", omega_file, "Behavior JSON")->required();
  omega_cmd->add_flag("--all", omega_all, "List every facet value");
  omega_cmd->callback([&] {
    action = [&] {
      Behavior b = load_behavior(omega_file);
      int n = cycle_length(b.scenario());
      if (n == 0) throw InputError("behavior is not on an n-cycle scenario");
      json j = {{"n", n}, {"classical_bound", n - 2}, {"violated", nullptr}};
      if (auto f = violated_facet(b)) {
        j["violated"] = {{"k", f->index()}, {"signs", f->signs()}, {"value", format_rational(omega_value(*f, b))}};
      }
      if (omega_all) {
        json values = json::array();
        auto vals = omega_values(b);
        auto facets = enumerate_facets(n);
        for (std::size_t k = 0; k < vals.size(); ++k) {
          values.push_back({{"k", k}, {"signs", facets[k].signs()}, {"value", format_rational(vals[k])}});
        }
        j["values"] = values;
      }
      emitter.emit(j);
    };
  });

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "Classical, quantum and algebraic bounds as CSV");
  int n_min = 4, n_max = 8, precision = 7;
  bounds_cmd->add_option("--n-min", n_min, "Smallest n")->required();
  bounds_cmd->add_option("--n-max", n_max, "Largest n")->required();
  bounds_cmd->add_option("--precision", precision, "Significant digits of the quantum bound")
      ->check(CLI::Range(1, 90));
  bounds_cmd->callback([&] {
    action = [&] {
      if (n_min > n_max) throw InputError("--n-min exceeds --n-max");
      std::ostringstream out;
      out << "n,classical,quantum,algebraic_max\n";
      for (int n = n_min; n <= n_max; ++n) {
        auto b = bounds(n);
        out << n << ',' << format_rational(b.classical) << ',' << b.quantum.str(precision) << ','
            << format_rational(b.algebraic_max) << '\n';
      }
      emitter.text(out.str());
    };
  });

  // monotone
  auto* monotone_cmd = app.add_subcommand("monotone", "Evaluate a contextuality monotone");
  std::string monotone_kind, monotone_file;
  bool monotone_oracle = false;
  monotone_cmd->add_option("kind", monotone_kind, "momega | mnpr")
      ->required()
      ->check(CLI::IsMember({"momega", "mnpr"}));
  monotone_cmd->add_option("file", monotone_file, "Behavior JSON")->required();
  monotone_cmd->add_flag("--oracle", monotone_oracle, "Use the image-enumeration oracle for momega");
  monotone_cmd->callback([&] {
    action = [&] {
      Behavior b = load_behavior(monotone_file);
      if (monotone_kind == "momega") {
        emitter.emit(to_json(monotone_oracle ? m_omega_oracle(b) : m_omega(b), "M_Omega"));
      } else {
        emitter.emit(to_json(m_npr(b), "M_NPR"));
      }
    };
  });

  // convert / classify
  auto* convert_cmd = app.add_subcommand("convert", "Decide A -> B under noncontextual wirings");
  std::string conv_a, conv_b;
  convert_cmd->add_option("a", conv_a, "Source behavior JSON")->required();
  convert_cmd->add_option("b", conv_b, "Target behavior JSON")->required();
  convert_cmd->callback([&] {
    action = [&] {
      Behavior a = load_behavior(conv_a);
      Behavior b = load_behavior(conv_b);
      auto cert = can_convert(a, b);
      if (!cert.convertible()) exit_code = kExitNegative;
      emitter.emit(to_json(cert, a, b));
    };
  });

  auto* classify_cmd = app.add_subcommand("classify", "Relation between two behaviors in the pre-order");
  std::string cls_a, cls_b;
  classify_cmd->add_option("a", cls_a, "First behavior JSON")->required();
  classify_cmd->add_option("b", cls_b, "Second behavior JSON")->required();
  classify_cmd->callback([&] {
    action = [&] {
      Behavior a = load_behavior(cls_a);
      Behavior b = load_behavior(cls_b);
      auto pc = classify(a, b);
      auto weights = [](const ConversionCertificate& c) {
        return c.weights ? to_json(*c.weights).at("components") : json(nullptr);
      };
      emitter.emit({{"relation", to_string(pc.relation)},
                    {"forward", {{"verdict", to_string(pc.forward.verdict)}, {"weights", weights(pc.forward)}}},
                    {"backward", {{"verdict", to_string(pc.backward.verdict)}, {"weights", weights(pc.backward)}}}});
    };
  });

  // wirings
  auto* wirings_cmd = app.add_subcommand("wirings", "Deterministic noncontextual wirings of the n-cycle");
  std::string wirings_kind;
  int wirings_n = 0;
  bool count_only = false;
  wirings_cmd->add_option("kind", wirings_kind, "enumerate | symmetries")
      ->required()
      ->check(CLI::IsMember({"enumerate", "symmetries"}));
  wirings_cmd->add_option("--n", wirings_n, "Cycle length")->required();
  wirings_cmd->add_flag("--count-only", count_only, "Only report counts");
  wirings_cmd->callback([&] {
    action = [&] {
      json j = {{"n", wirings_n}, {"kind", wirings_kind}};
      std::vector<DeterministicWiring> list;
      if (wirings_kind == "enumerate") {
        list = *enumerate_deterministic(wirings_n);
        j["homomorphisms"] = enumerate_homomorphisms(wirings_n).size();
        j["raw_count"] = raw_deterministic_count(wirings_n);
      } else {
        list = enumerate_symmetries(wirings_n);
      }
      j["count"] = list.size();
      if (!count_only) {
        json arr = json::array();
        for (const auto& w : list) arr.push_back(to_json(w));
        j["wirings"] = arr;
      }
      emitter.emit(j);
    };
  });

  // preorder demo
  auto* preorder_cmd = app.add_subcommand("preorder", "Global properties of the pre-order");
  preorder_cmd->require_subcommand(1);
  auto* demo_cmd = preorder_cmd->add_subcommand("demo", "Certified demonstration of one property");
  std::string property;
  int demo_n = 4;
  std::vector<std::string> grid_text;
  std::size_t demo_k = 0, samples = 9;
  std::uint64_t seed = 0;
  demo_cmd->add_option("--property", property, "locally_infinite | not_total | not_weak | infinite_height | infinite_width")
      ->required();
  demo_cmd->add_option("--n", demo_n, "Cycle length")->required();
  demo_cmd->add_option("--grid", grid_text, "Comma-separated rationals for chain/antichain demos")->delimiter(',');
  demo_cmd->add_option("--k", demo_k, "Facet index");
  demo_cmd->add_option("--samples", samples, "Interior samples for locally_infinite");
  demo_cmd->add_option("--seed", seed, "Recorded in the report");
  demo_cmd->callback([&] {
    action = [&] {
      Property p = property_from_string(property);
      DemoOptions opts{demo_k, seed};
      std::vector<Rational> grid;
      for (const auto& g : grid_text) grid.push_back(parse_flag_rational(g, "--grid"));
      PropertyDemo demo;
      switch (p) {
        case Property::not_total: demo = demo_not_total(demo_n, opts); break;
        case Property::not_weak: demo = demo_not_weak(demo_n, opts); break;
        case Property::locally_infinite: demo = demo_locally_infinite(demo_n, samples, opts); break;
        case Property::infinite_height:
          if (grid.empty()) grid = {0, Rational(1, 4), Rational(1, 2), Rational(3, 4), 1};
          demo = demo_chain(demo_n, grid, opts);
          break;
        case Property::infinite_width:
          if (grid.empty()) grid = {Rational(11, 20), Rational(13, 20), Rational(3, 4), Rational(17, 20), Rational(19, 20)};
          demo = demo_antichain(demo_n, grid, opts);
          break;
      }
      if (!demo.certified()) exit_code = kExitNegative;
      emitter.emit(to_json(demo));
    };
  });

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "Embed an n-cycle behavior along an induced cycle");
  std::string embed_b, embed_s;
  std::vector<std::size_t> embed_cycle;
  embed_cmd->add_option("behavior", embed_b, "n-cycle behavior JSON")->required();
  embed_cmd->add_option("scenario", embed_s, "Target scenario JSON")->required();
  embed_cmd->add_option("--cycle", embed_cycle, "Measurement indices i,j,k,...")->required()->delimiter(',');
  embed_cmd->callback([&] {
    action = [&] {
      Behavior b = load_behavior(embed_b);
      Scenario target = load_scenario(embed_s);
      emitter.emit(to_json(embed_cycle_behavior(b, target, embed_cycle)));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  emitter.set_path(output);
  try {
    if (action) action();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
