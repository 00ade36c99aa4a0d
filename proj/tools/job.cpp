#include "job.hpp"

#include <sstream>

#include "dvr/flowchart.hpp"
#include "dvr/parse.hpp"
#include "dvr/rigidity.hpp"

namespace dvr {

using nlohmann::json;

namespace {

json step_json(const TransformStep& s, bool weighted) {
  json j;
  j["rule"] = s.rule;
  j["center"] = s.center;
  j["weights"] = s.weights;
  j["c"] = s.t_removed;
  j["mu"] = s.mu_before;
  json before, after;
  before["n"] = s.n_before;
  after["n"] = s.n_after;
  if (weighted) {
    auto k = [](int v) { return v == kAxialInfinite ? json("infinite") : json(v); };
    before["k"] = k(s.k_before);
    after["k"] = k(s.k_after);
    j["criterion_ok"] = s.criterion_ok;
  }
  j["invariants_before"] = before;
  j["invariants_after"] = after;
  json disc = json::object();
  for (auto& [name, v] : s.discrepancy) disc[name] = v;
  j["discrepancy"] = disc;
  j["equation_after"] = s.after.to_string();
  return j;
}

json cdv_json(const SingularityReport& r) {
  json j;
  j["point"] = r.point.to_string();
  j["orbit_size"] = r.point.orbit_size;
  j["type"] = r.verdict.type == "QuotientHalf111" || r.verdict.type == "TerminalIndex2" ||
                      r.verdict.type == "NotTerminal"
                  ? r.verdict.type
                  : r.verdict.name();
  if (!r.verdict.sections.empty()) {
    j["sections_tried"] = r.verdict.sections_tried;
    j["sections_agree"] = r.verdict.agreement;
  }
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json singularities_json(const std::vector<SingularityReport>& v) {
  json a = json::array();
  for (auto& r : v) a.push_back(cdv_json(r));
  return a;
}

int outcome_exit(Outcome o) {
  return o == Outcome::Standard || o == Outcome::Exceptional ? 0 : 2;
}

void run_flowchart(const JobSpec& spec, const Poly& F, json& rep, int& code) {
  FlowchartOptions opt;
  opt.cap = spec.cap;
  opt.seed = spec.seed;
  bool dp2 = spec.mode == "dp2";
  Trace tr = dp2 ? run_dp2(F, opt) : run_cubic(F, opt);
  rep["outcome"] = outcome_name(tr.outcome);
  if (!tr.diagnosis.empty()) rep["diagnosis"] = tr.diagnosis;
  json steps = json::array();
  for (auto& s : tr.steps) steps.push_back(step_json(s, dp2));
  rep["steps"] = steps;
  rep["final"] = tr.final.to_string();
  rep["states"] = tr.states;
  json certs = json::object();
  if (tr.standard) {
    certs["standard"] = {{"standard", tr.standard->standard}, {"reason", tr.standard->reason}};
    rep["singularities"] = singularities_json(tr.standard->report);
  }
  if (tr.exceptional) {
    auto& e = *tr.exceptional;
    certs["exceptional"] = {{"result", e.result},
                            {"conjugate_planes", e.conjugate_planes},
                            {"singular_along_c", e.singular_along_c},
                            {"double_triple_point", e.double_triple_point}};
  }
  if (tr.determinantal) {
    auto& d = *tr.determinantal;
    json m = json::array();
    for (auto& row : d.ambient.matrix) {
      json r = json::array();
      for (auto& e : row) r.push_back(e.to_string());
      m.push_back(r);
    }
    certs["determinantal"] = {{"matrix", m}, {"equation", d.Fplus.to_string()}, {"special_fiber_ok", d.special_fiber_ok}};
  }
  rep["certificates"] = certs;
  code = outcome_exit(tr.outcome);
  if (spec.verify) {
    TraceVerification v = verify_trace(tr, F);
    rep["verification"] = {{"ok", v.ok}, {"failures", v.failures}};
    if (!v.ok) code = 1;
  }
}

void run_classify(const JobSpec& spec, const Poly& F, const AmbientSpace& A, json& rep, int& code) {
  Field K = A.ring->field();
  std::vector<SingularityReport> out;
  if (!spec.point.empty()) {
    std::vector<Scalar> coords;
    std::stringstream ss(spec.point);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item.erase(0, item.find_first_not_of(' '));
      item.erase(item.find_last_not_of(' ') + 1);
      try {
        coords.push_back(K.from_mpq(mpq_class(item)));
      } catch (const std::invalid_argument&) {
        throw DomainError("bad point coordinate '" + item + "'");
      }
    }
    if (static_cast<int>(coords.size()) != A.ring->nvars()) throw DomainError("point has the wrong number of coordinates");
    FiberPoint p = rational_point(A.ring, coords);
    out.push_back({p, classify_threefold_point(F, p, spec.seed), ""});
  } else {
    SingularLocus sl = singular_locus(F, A);
    if (sl.contains_curve) {
      rep["outcome"] = "singular-along-curve";
      rep["singularities"] = json::array();
      return;
    }
    uint64_t s = spec.seed;
    for (auto& p : sl.points) {
      if (p.vertex) continue;
      out.push_back({p, classify_threefold_point(F, p, s++), ""});
    }
    if (A.kind == AmbientKind::WP2111) {
      VertexAnalysis va = analyze_vertex(F);
      if (va.k >= 1) {
        FiberPoint v = rational_point(A.ring, {K.one(), K.zero(), K.zero(), K.zero()});
        SingularityReport r{v, CdvVerdict{}, va.k == 1 ? va.shape : va.shape.empty() ? va.reason : va.shape};
        r.verdict.type = va.k == 1 ? "QuotientHalf111" : va.terminal ? "TerminalIndex2" : "NotTerminal";
        out.push_back(r);
      }
    }
  }
  rep["outcome"] = "classified";
  rep["singularities"] = singularities_json(out);
  rep["certificates"] = {{"axial_multiplicity", A.kind == AmbientKind::WP2111 ? json(axial_multiplicity(F, spec.truncation)) : json(nullptr)}};
  code = 0;
}

void run_rigidity(const JobSpec& spec, const Poly& F, const AmbientSpace& A, json& rep, int& code) {
  ProfileMatch m = match_profile(F, A);
  code = 0;
  if (!m.matched) {
    rep["outcome"] = "no-match";
    rep["diagnosis"] = m.reason;
    return;
  }
  const RigidityProfile& p = m.profile;
  json prof = {{"d", p.d}, {"index", p.index}, {"k", p.k}, {"shape", p.shape}, {"change", p.change.to_string()}};
  if (p.s >= 0) prof["s"] = p.s;
  if (!p.note.empty()) prof["note"] = p.note;
  json pieces = json::object();
  for (auto& [n, q] : p.pieces) pieces[n] = q.to_string();
  prof["pieces"] = pieces;
  json flags = json::array();
  for (auto& f : genericity_check(p)) flags.push_back({{"condition", f.name}, {"value", f.value}, {"detail", f.detail}});
  prof["genericity"] = flags;
  SweepOptions opt;
  opt.count = spec.count;
  opt.seed = spec.seed;
  opt.box = spec.box;
  SweepReport sw = rigidity_sweep(p, opt);
  json sweep = {{"ran", sw.ran}, {"members", sw.members}, {"du_val", sw.du_val}, {"rejected", sw.rejected},
                {"violations", sw.violations}, {"unresolved", sw.unresolved}};
  if (!sw.reason.empty()) sweep["reason"] = sw.reason;
  json samples = json::array();
  for (auto& [h, s] : sw.samples) samples.push_back({{"member", h}, {"singularities", s}});
  sweep["samples"] = samples;
  rep["certificates"] = {{"profile", prof}, {"sweep", sweep}};
  if (!sw.ran) {
    rep["outcome"] = "not-generic";
    rep["diagnosis"] = sw.reason;
  } else if (!sw.violations.empty()) {
    rep["outcome"] = "not-du-val";
    code = 1;
  } else if (!sw.unresolved.empty()) {
    rep["outcome"] = "unresolved";
    code = 2;
  } else {
    rep["outcome"] = "du-val";
  }
}

}  // namespace

Field parse_field_spec(const std::string& s) {
  if (s == "q" || s == "Q") return Field::rationals();
  if (s.rfind("fp:", 0) == 0) {
    long p = 0;
    try {
      size_t used = 0;
      p = std::stol(s.substr(3), &used);
      if (used != s.size() - 3) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw DomainError("bad field spec '" + s + "'");
    }
    return Field::prime(p);
  }
  throw DomainError("bad field spec '" + s + "' (expected q or fp:<p>)");
}

JobResult run_job(const JobSpec& spec) {
  JobResult res;
  json& rep = res.report;
  rep["version"] = kReportVersion;
  rep["mode"] = spec.mode;
  rep["seed"] = spec.seed;
  rep["input"] = {{"ambient", spec.ambient}, {"field", spec.field}, {"equation", spec.equation}};
  if (!spec.name.empty()) rep["job"] = spec.name;
  rep["steps"] = json::array();
  rep["singularities"] = json::array();
  rep["certificates"] = json::object();
  try {
    if (spec.mode != "cubic" && spec.mode != "dp2" && spec.mode != "classify" && spec.mode != "rigidity")
      throw DomainError("unknown mode '" + spec.mode + "'");
    Field K = parse_field_spec(spec.field);
    AmbientSpace A = AmbientSpace::make(parse_ambient_kind(spec.ambient), K);
    if (A.kind == AmbientKind::DeterminantalP6) throw DomainError("P6 models are produced, not read");
    Poly F = parse_poly(spec.equation, A.ring);
    if (F.is_zero()) throw DomainError("equation is zero");
    if (!F.is_homogeneous()) throw DomainError("equation is not weighted homogeneous");
    if (F.weighted_degree() != A.degree())
      throw DomainError("equation has degree " + std::to_string(F.weighted_degree()) + ", the ambient needs " +
                        std::to_string(A.degree()));
    rep["input"]["canonical"] = F.to_string();
    if (spec.mode == "cubic" && A.kind != AmbientKind::P3) throw DomainError("mode cubic needs ambient P3");
    if (spec.mode == "dp2" && A.kind != AmbientKind::WP2111) throw DomainError("mode dp2 needs ambient WP2111");
    if (spec.mode == "cubic" || spec.mode == "dp2") run_flowchart(spec, F, rep, res.exit_code);
    else if (spec.mode == "classify") run_classify(spec, F, A, rep, res.exit_code);
    else run_rigidity(spec, F, A, rep, res.exit_code);
  } catch (const ParseError& e) {
    rep["outcome"] = "error";
    rep["error"] = {{"kind", "syntax"}, {"message", e.what()}, {"column", e.column()}};
    res.exit_code = 1;
  } catch (const Unresolved& e) {
    rep["outcome"] = "unresolved";
    rep["diagnosis"] = e.what();
    res.exit_code = 2;
  } catch (const Error& e) {
    rep["outcome"] = "error";
    rep["error"] = {{"kind", "domain"}, {"message", e.what()}};
    res.exit_code = 1;
  }
  return res;
}

std::string report_text(const json& report) { return report.dump(2) + "\n"; }

}  // namespace dvr
