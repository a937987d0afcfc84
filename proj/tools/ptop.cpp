// ptop: command-line frontend for frames, theories, lattices and the
// certified maximizer.
//
// Exit codes: 0 success (verdicts are in the payload), 1 parse or input
// error, 2 cap overflow, 3 budget exhausted (partial result printed),
// 4 internal error.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptop/config.hpp"
#include "ptop/dsl/builtins.hpp"
#include "ptop/dsl/compile.hpp"
#include "ptop/dsl/parser.hpp"
#include "ptop/dsl/printer.hpp"
#include "ptop/frame/io.hpp"
#include "ptop/frame/properties.hpp"
#include "ptop/order/io.hpp"
#include "ptop/reals/evt.hpp"
#include "ptop/report.hpp"

namespace {

using ptop::report::Json;

enum Exit { kOk = 0, kInput = 1, kCap = 2, kBudget = 3, kInternal = 4 };

struct Options {
  bool json = false;
  int decimal = -1;
  std::string config;
  ptop::Limits limits;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ptop::InvalidInput("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// A `.thy` file is compiled with the truncation bounds; anything else is
// read as a presentation.
ptop::frame::FramePresentation load_presentation(const std::string& path, const std::string& truncate,
                                                 const ptop::Limits& limits) {
  auto text = read_file(path);
  if (ends_with(path, ".thy"))
    return ptop::dsl::compile(ptop::dsl::parse_theory(text), ptop::dsl::TruncationParams::parse(truncate), limits);
  return ptop::frame::stabilize(ptop::frame::parse_presentation(text, limits), limits);
}

void emit(const Options& o, const Json& j) {
  if (o.json) std::cout << j.dump(2) << "\n";
  else std::cout << ptop::report::text(j);
}

int emit_error(const Options& o, const std::string& kind, const std::exception& e, int code,
               const Json& extra = Json::object()) {
  Json j{{"error", kind}, {"message", e.what()}};
  if (auto* pe = dynamic_cast<const ptop::ParseError*>(&e)) {
    j["line"] = pe->line();
    j["column"] = pe->column();
  }
  for (const auto& [k, v] : extra.items()) j[k] = v;
  if (o.json) std::cout << j.dump(2) << "\n";
  else std::cerr << "error: " << e.what() << "\n";
  return code;
}

const std::vector<std::string> kRationalKeys{"lower", "upper", "eps", "delta", "lower_witness",
                                             "p", "q", "q_cover", "witness_lower"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite frames, geometric theories and certified suprema"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Options o;
  app.add_flag("--json", o.json, "Print JSON instead of text");
  app.add_option("--decimal", o.decimal, "Also print k-digit decimal approximations")->check(CLI::Range(0, 60));
  app.add_option("--config", o.config, "JSON limits file (default: $PTOP_CONFIG)");

  std::string file, truncate, e1, e2, positive;
  std::string expr, domain, eps = "1/1000000", p, q, probes_text;
  bool trace = false;
  unsigned random_probes = 100;
  std::uint64_t seed = 1;
  std::string command;

  auto* frame = app.add_subcommand("frame", "Inspect a presentation (.pres) or theory (.thy)");
  frame->require_subcommand(1);
  for (const char* name : {"elements", "leq", "points", "hausdorff", "overt", "compact"}) {
    auto* sub = frame->add_subcommand(name);
    sub->add_option("file", file, "Presentation or theory file")->required();
    sub->add_option("--truncate", truncate, "Truncation bounds for a theory, e.g. N=2");
    if (std::string(name) == "leq") {
      sub->add_option("lhs", e1, "Expression over generators")->required();
      sub->add_option("rhs", e2, "Expression over generators")->required();
    }
    if (std::string(name) == "overt")
      sub->add_option("--positive", positive, "Certificate: formal meets separated by ','")->required();
    sub->callback([&, name] { command = std::string("frame ") + name; });
  }

  auto* theory = app.add_subcommand("theory", "Parse and compile geometric theories");
  theory->require_subcommand(1);
  for (const char* name : {"parse", "compile", "models"}) {
    auto* sub = theory->add_subcommand(name);
    sub->add_option("file", file, "Theory file")->required();
    if (std::string(name) != "parse") sub->add_option("--truncate", truncate, "Truncation bounds, e.g. N=2,X=3");
    sub->callback([&, name] { command = std::string("theory ") + name; });
  }

  auto* stone = app.add_subcommand("stone", "Prime filters and the Birkhoff representation");
  stone->require_subcommand(1);
  for (const char* name : {"spectrum", "birkhoff"}) {
    auto* sub = stone->add_subcommand(name);
    sub->add_option("file", file, "Lattice file")->required();
    sub->callback([&, name] { command = std::string("stone ") + name; });
  }

  auto* evt = app.add_subcommand("evt", "Certified maximum of a function over a compact domain");
  evt->require_subcommand(1);
  for (const char* name : {"max", "locate", "validate"}) {
    auto* sub = evt->add_subcommand(name);
    sub->add_option("--expr", expr, "Function of x")->required();
    sub->add_option("--domain", domain, "Union of closed intervals, e.g. \"[0,1] u [2,3]\"")->required();
    if (std::string(name) == "locate") {
      sub->add_option("--p", p, "Lower probe (rational)")->required();
      sub->add_option("--q", q, "Upper probe (rational)")->required();
    } else {
      sub->add_option("--eps", eps, "Target width as an exact rational")->capture_default_str();
      sub->add_flag("--trace", trace, "Include the bound sequences and pruned boxes");
    }
    if (std::string(name) == "validate") {
      sub->add_option("--probes", probes_text, "Probes p:q separated by ','; default is random");
      sub->add_option("--random", random_probes, "Number of random probes")->capture_default_str();
      sub->add_option("--seed", seed, "Seed for random probes")->capture_default_str();
    }
    sub->callback([&, name] { command = std::string("evt ") + name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (o.config.empty())
      if (const char* env = std::getenv("PTOP_CONFIG"); env && *env) o.config = env;
    o.limits = o.config.empty() ? ptop::Limits{} : ptop::load_limits(o.config);
  } catch (const ptop::Error& e) {
    return emit_error(o, "config", e, kInput);
  }
  const auto& L = o.limits;

  try {
    namespace fr = ptop::frame;
    namespace rl = ptop::reals;
    namespace rp = ptop::report;

    if (command.rfind("frame ", 0) == 0) {
      auto pres = std::make_shared<const fr::FramePresentation>(load_presentation(file, truncate, L));
      if (command == "frame overt") {
        std::vector<fr::FormalMeet> members;
        std::stringstream ss(positive);
        std::string item;
        while (std::getline(ss, item, ',')) {
          auto ideal = fr::parse_element(pres, item);
          auto gens = ideal.generators();
          if (gens.size() != 1) throw ptop::InvalidInput("'" + item + "' is not a single formal meet");
          members.push_back(gens[0]);
        }
        emit(o, rp::certificate(fr::check_positivity_certificate(pres, members)));
        return kOk;
      }
      if (command == "frame compact") {
        emit(o, rp::compactness(fr::is_compact_presentation(pres, L)));
        return kOk;
      }
      auto pf = fr::enumerate_frame(pres, L);
      if (command == "frame elements") emit(o, rp::frame_elements(pf));
      else if (command == "frame points") emit(o, rp::frame_points(pf));
      else if (command == "frame hausdorff") emit(o, rp::hausdorff(fr::is_hausdorff(pf.frame, L)));
      else if (command == "frame leq") {
        auto a = fr::parse_element(pres, e1), b = fr::parse_element(pres, e2);
        emit(o, Json{{"leq", fr::cideal_leq(a, b)}, {"lhs", a.to_string()}, {"rhs", b.to_string()}});
      }
      return kOk;
    }

    if (command.rfind("theory ", 0) == 0) {
      auto ast = ptop::dsl::parse_theory(read_file(file));
      if (command == "theory parse") {
        emit(o, Json{{"families", ast.family_count()},
                     {"axioms", ast.axioms.size()},
                     {"text", ptop::dsl::print_theory(ast)}});
        return kOk;
      }
      auto t = ptop::dsl::TruncationParams::parse(truncate);
      auto raw = ptop::dsl::compile_raw(ast, t, L);
      if (command == "theory compile") {
        emit(o, rp::compiled(raw));
        return kOk;
      }
      auto pres = std::make_shared<const fr::FramePresentation>(fr::stabilize(raw, L));
      emit(o, rp::models(fr::enumerate_frame(pres, L)));
      return kOk;
    }

    if (command.rfind("stone ", 0) == 0) {
      auto lat = ptop::order::parse_lattice(read_file(file), L);
      if (auto t = lat.distributivity_violation()) {
        auto w = lat.witness_names(*t);
        return emit_error(o, "not_distributive", ptop::order::NotDistributive(w), kInput,
                          Json{{"witness", {w.a, w.b, w.c}}});
      }
      if (command == "stone spectrum") emit(o, rp::spectrum(lat));
      else emit(o, rp::birkhoff(lat, ptop::order::birkhoff_iso(lat, L)));
      return kOk;
    }

    // evt
    auto e = rl::parse_expr(expr);
    auto d = rl::parse_domain(domain);
    if (command == "evt locate") {
      auto j = rp::locate(rl::locate(e, d, rl::parse_rat(p), rl::parse_rat(q), L));
      if (o.decimal >= 0) rp::add_decimals(j, static_cast<unsigned>(o.decimal), kRationalKeys);
      emit(o, j);
      return kOk;
    }
    auto r = rl::evt_maximize(e, d, rl::parse_rat(eps), L, trace || command == "evt validate");
    if (command == "evt max") {
      auto j = rp::evt(r);
      if (!trace) {
        j.erase("trace");
        j.erase("pruned");
      }
      if (o.decimal >= 0) rp::add_decimals(j, static_cast<unsigned>(o.decimal), kRationalKeys);
      emit(o, j);
      return r.complete ? kOk : kBudget;
    }
    // evt validate
    std::vector<std::pair<rl::Rat, rl::Rat>> probes;
    if (!probes_text.empty()) {
      std::stringstream ss(probes_text);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw ptop::InvalidInput("probe '" + item + "' is not of the form p:q");
        probes.emplace_back(rl::parse_rat(item.substr(0, colon)), rl::parse_rat(item.substr(colon + 1)));
      }
    } else {
      // Endpoints on a 1/1000 grid spanning one unit beyond the enclosure.
      std::mt19937_64 rng(seed);
      const auto& enc = r.enclosure;
      rl::Rat lo = enc.lower - 1, span = enc.upper - enc.lower + 2;
      std::uniform_int_distribution<std::int64_t> u(0, 1000);
      for (unsigned i = 0; i < random_probes; ++i) {
        rl::Rat a = lo + span * rl::Rat(u(rng), 1000), b = lo + span * rl::Rat(u(rng), 1000);
        if (b < a) std::swap(a, b);
        if (b - a < rl::Rat(1, 1000)) b = a + rl::Rat(1, 1000);
        probes.emplace_back(a, b);
      }
    }
    auto rep = rl::cut_validate(e, d, r, probes, L);
    auto j = rp::cut(rep);
    j["lower"] = rp::rat(r.enclosure.lower);
    j["upper"] = rp::rat(r.enclosure.upper);
    if (o.decimal >= 0) rp::add_decimals(j, static_cast<unsigned>(o.decimal), kRationalKeys);
    emit(o, j);
    return r.complete ? kOk : kBudget;
  } catch (const ptop::ParseError& e) {
    return emit_error(o, "parse", e, kInput);
  } catch (const ptop::CapOverflow& e) {
    return emit_error(o, "cap_overflow", e, kCap);
  } catch (const ptop::BudgetExhausted& e) {
    return emit_error(o, "budget_exhausted", e, kBudget);
  } catch (const ptop::InvalidInput& e) {
    return emit_error(o, "invalid_input", e, kInput);
  } catch (const std::exception& e) {
    return emit_error(o, "internal", e, kInternal);
  }
}
