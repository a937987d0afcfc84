#pragma once

// JSON reports shared by the CLI, the samples and the acceptance suite.
// Every report is one ordered JSON value; the text rendering is derived
// from it, so both output modes carry the same exact numbers.

#include <string>
#include <vector>

#include <json.hpp>

#include "ptop/dsl/compile.hpp"
#include "ptop/frame/cideal.hpp"
#include "ptop/frame/io.hpp"
#include "ptop/frame/properties.hpp"
#include "ptop/order/constructions.hpp"
#include "ptop/order/io.hpp"
#include "ptop/reals/evt.hpp"

namespace ptop::report {

using Json = nlohmann::ordered_json;
using reals::Rat;

// ---------------------------------------------------------------- reals

inline Json rat(const Rat& r) { return reals::to_string(r); }
inline Rat rat_from(const Json& j) { return reals::parse_rat(j.get<std::string>()); }

inline Json interval(const reals::RatInterval& i) { return Json::array({rat(i.lo), rat(i.hi)}); }
inline reals::RatInterval interval_from(const Json& j) { return {rat_from(j.at(0)), rat_from(j.at(1))}; }

inline Json intervals(const std::vector<reals::RatInterval>& v) {
  Json out = Json::array();
  for (const auto& i : v) out.push_back(interval(i));
  return out;
}
inline std::vector<reals::RatInterval> intervals_from(const Json& j) {
  std::vector<reals::RatInterval> out;
  for (const auto& i : j) out.push_back(interval_from(i));
  return out;
}

/// `{lower, upper, eps, nodes_expanded, cover, delta, lower_witness,
/// complete, trace?, pruned?}`; trace and pruned only when recorded.
inline Json evt(const reals::EvtResult& r) {
  const auto& e = r.enclosure;
  Json j{{"lower", rat(e.lower)},
         {"upper", rat(e.upper)},
         {"eps", rat(e.eps)},
         {"nodes_expanded", r.nodes_expanded},
         {"cover", intervals(r.cover.intervals)},
         {"delta", rat(r.cover.delta)},
         {"lower_witness", rat(e.lower_witness)},
         {"complete", r.complete}};
  if (!e.trace.empty()) {
    Json lo = Json::array(), hi = Json::array();
    for (const auto& s : e.trace) {
      lo.push_back(rat(s.lower));
      hi.push_back(rat(s.upper));
    }
    j["trace"] = Json{{"lower", lo}, {"upper", hi}};
    Json pr = Json::array();
    for (const auto& p : r.pruned)
      pr.push_back(Json{{"box", interval(p.box)}, {"upper", rat(p.upper)}, {"lower", rat(p.lower_at_prune)}});
    j["pruned"] = pr;
  }
  return j;
}

inline reals::EvtResult evt_from(const Json& j) {
  reals::EvtResult r;
  auto& e = r.enclosure;
  e.lower = rat_from(j.at("lower"));
  e.upper = rat_from(j.at("upper"));
  e.eps = rat_from(j.at("eps"));
  e.lower_witness = rat_from(j.at("lower_witness"));
  r.nodes_expanded = j.at("nodes_expanded").get<std::uint64_t>();
  r.cover.intervals = intervals_from(j.at("cover"));
  r.cover.delta = rat_from(j.at("delta"));
  r.complete = j.at("complete").get<bool>();
  if (j.contains("trace")) {
    const auto& lo = j.at("trace").at("lower");
    const auto& hi = j.at("trace").at("upper");
    for (std::size_t k = 0; k < lo.size(); ++k) e.trace.push_back({rat_from(lo.at(k)), rat_from(hi.at(k))});
  }
  if (j.contains("pruned"))
    for (const auto& p : j.at("pruned"))
      r.pruned.push_back({interval_from(p.at("box")), rat_from(p.at("upper")), rat_from(p.at("lower"))});
  return r;
}

inline Json locate(const reals::LocateResult& r) {
  Json j{{"branch", reals::to_string(r.branch)},
         {"p", rat(r.p)},
         {"q", rat(r.q)},
         {"budget", r.budget}};
  if (r.branch == reals::Branch::Left) {
    j["claim"] = "p < sup";
    j["witness"] = interval(*r.witness);
    j["witness_lower"] = rat(r.witness_lower);
  } else {
    j["claim"] = "sup < q";
    j["q_cover"] = rat(r.q_cover);
    j["cover"] = intervals(r.cover);
  }
  return j;
}

inline reals::LocateResult locate_from(const Json& j) {
  reals::LocateResult r;
  r.branch = j.at("branch") == "LeftBranch" ? reals::Branch::Left : reals::Branch::Right;
  r.p = rat_from(j.at("p"));
  r.q = rat_from(j.at("q"));
  r.q_cover = reals::midpoint(r.p, r.q);
  r.budget = j.at("budget").get<std::uint64_t>();
  if (r.branch == reals::Branch::Left) {
    r.witness = interval_from(j.at("witness"));
    r.witness_lower = rat_from(j.at("witness_lower"));
  } else {
    r.q_cover = rat_from(j.at("q_cover"));
    r.cover = intervals_from(j.at("cover"));
  }
  return r;
}

inline Json cut(const reals::CutReport& r) {
  Json probes = Json::array();
  for (const auto& p : r.probes) {
    Json o{{"p", rat(p.p)}, {"q", rat(p.q)}, {"branch", reals::to_string(p.branch)},
           {"admissible", p.admissible}, {"certificate", p.certificate}};
    if (!p.detail.empty()) o["detail"] = p.detail;
    probes.push_back(o);
  }
  Json t{{"lower_nondecreasing", r.trace.lower_nondecreasing},
         {"upper_nonincreasing", r.trace.upper_nonincreasing},
         {"ordered", r.trace.ordered},
         {"pruning_dominated", r.trace.pruning_dominated},
         {"witness_exact", r.trace.witness_exact}};
  if (!r.trace.failure.empty()) t["failure"] = r.trace.failure;
  return Json{{"ok", r.ok()}, {"inconsistencies", r.inconsistencies}, {"trace", t}, {"probes", probes}};
}

/// Adds `approx_decimal` with k-digit roundings of the named rational
/// fields, each prefixed by '~'.
inline void add_decimals(Json& j, unsigned k, const std::vector<std::string>& keys) {
  Json approx = Json::object();
  for (const auto& key : keys)
    if (j.contains(key) && j[key].is_string()) approx[key] = "~" + reals::to_decimal(rat_from(j[key]), k);
  if (!approx.empty()) j["approx_decimal"] = approx;
}

// ---------------------------------------------------------------- frames

inline std::vector<std::string> element_names(const frame::PresentedFrame& pf) {
  std::vector<std::string> out;
  for (Elem e = 0; e < pf.frame->size(); ++e) out.push_back(pf.ideal(e).to_string());
  return out;
}

inline Json frame_elements(const frame::PresentedFrame& pf) {
  auto names = element_names(pf);
  Json edges = Json::array();
  for (auto [a, b] : pf.frame->lattice().order().hasse_edges()) edges.push_back({names[a], names[b]});
  return Json{{"generators", pf.presentation->generators()},
              {"size", pf.frame->size()},
              {"elements", names},
              {"hasse_edges", edges}};
}

inline Json frame_points(const frame::PresentedFrame& pf) {
  Json pts = Json::array();
  for (const auto& pt : frame::points(*pf.frame)) {
    Json truths = Json::array();
    for (std::size_t g = 0; g < pf.generator_embedding.size(); ++g)
      if (pt.test(pf.generator_embedding[g])) truths.push_back(pf.presentation->generators()[g]);
    pts.push_back(truths);
  }
  return Json{{"count", pts.size()}, {"points", pts}};
}

inline Json hausdorff(const frame::HausdorffReport& r) {
  Json j{{"hausdorff", r.hausdorff}, {"open_diagonal", r.open_diagonal}, {"product_size", r.product_size}};
  if (r.closed_witness) {
    j["witness"] = r.witness_name;
    j["lemma_holds"] = r.lemma_holds;
  }
  return j;
}

inline Json certificate(const frame::CertificateCheck& c) {
  Json j{{"ok", c.ok()}, {"upward_closed", c.upward_closed}, {"covers_ok", c.covers_ok}, {"bottoms_ok", c.bottoms_ok}};
  if (!c.failure.empty()) j["failure"] = c.failure;
  return j;
}

inline Json compactness(const frame::CompactnessReport& r) {
  Json j{{"compact", r.compact}, {"certificate", r.certificate}, {"verified", r.verified},
         {"method", r.method},   {"frame_size", r.frame_size}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

// ---------------------------------------------------------------- theories

inline Json models(const frame::PresentedFrame& pf) {
  Json ms = Json::array();
  for (auto m : dsl::models(pf)) ms.push_back(dsl::true_props(*pf.presentation, m));
  return Json{{"count", ms.size()},
              {"frame_size", pf.frame->size()},
              {"nontrivial", pf.frame->size() > 1},
              {"propositions", pf.presentation->generators()},
              {"models", ms}};
}

inline Json compiled(const frame::FramePresentation& raw) {
  Json rels = Json::array();
  for (const auto& r : raw.relations()) rels.push_back(raw.to_string(r));
  return Json{{"generators", raw.generators()}, {"relations", rels}, {"text", frame::print_presentation(raw)}};
}

// ---------------------------------------------------------------- lattices

inline Json spectrum(const order::Lattice& l) {
  Json fs = Json::array();
  for (const auto& f : order::prime_filters(l)) {
    Json names = Json::array();
    for_each_bit(f, [&](Elem e) { names.push_back(l.name(e)); });
    fs.push_back(names);
  }
  return Json{{"count", fs.size()},
              {"join_irreducibles", order::join_irreducibles(l).elems.size()},
              {"prime_filters", fs}};
}

inline Json birkhoff(const order::Lattice& l, const order::BirkhoffIso& iso) {
  auto p = order::poset_to_json(iso.irreducibles.poset);
  return Json{{"irreducibles", p.at("elements")},
              {"hasse_edges", p.at("hasse_edges")},
              {"downsets", iso.downsets.members.size()},
              {"lattice_size", l.size()},
              {"iso_verified", true}};
}

// ---------------------------------------------------------------- text

namespace detail {

inline std::string inline_value(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string out = "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + inline_value(j[i]);
    return out + "]";
  }
  if (j.is_object()) {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      out += (first ? "" : ", ") + k + ": " + inline_value(v);
      first = false;
    }
    return out + "}";
  }
  return j.dump();
}

inline void render(const Json& j, const std::string& indent, std::string& out) {
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      out += indent + k + ":\n";
      render(v, indent + "  ", out);
    } else if (v.is_array() && !v.empty() && (v[0].is_object() || v.size() > 8)) {
      out += indent + k + ": (" + std::to_string(v.size()) + ")\n";
      for (const auto& item : v) out += indent + "  - " + inline_value(item) + "\n";
    } else {
      out += indent + k + ": " + inline_value(v) + "\n";
    }
  }
}

}  // namespace detail

/// Line-per-field rendering of a report object; strings are printed bare.
inline std::string text(const Json& j) {
  std::string out;
  detail::render(j, "", out);
  return out;
}

}  // namespace ptop::report
