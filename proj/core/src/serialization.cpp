#include "rds/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "rds/cantor.hpp"
#include "rds/conjugacy.hpp"
#include "rds/errors.hpp"
#include "rds/homeomorphism.hpp"

namespace rds {

using nlohmann::json;

namespace {

json rat(const Rational& q) { return to_string(q); }

Rational read_rational(const json& j, const char* what) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception&) {
      throw ParseError(std::string("bad rational for ") + what + ": " + j.get<std::string>());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number()) return exact(j.get<double>());
  throw ParseError(std::string("expected a number for ") + what);
}

double read_double(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  return to_double(read_rational(j, what));
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::int64_t read_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string("expected an integer for ") + what);
  return j.get<std::int64_t>();
}

json set_json(const GridCantorSet& s) {
  return {{"cell_width", rat(s.cell_width)}, {"origin", rat(s.origin)}};
}

GridCantorSet read_set(const json& j) {
  GridCantorSet s;
  s.cell_width = read_rational(field(j, "cell_width"), "cell_width");
  s.origin = read_rational(field(j, "origin"), "origin");
  if (s.cell_width <= 0) throw ParseError("cell_width must be positive");
  return s;
}

json gap_json(const LocalGap& g) { return json::array({g.generation, to_string(g.left), to_string(g.right)}); }

json plan_json(const TransportPlan& plan) {
  json pairs = json::array();
  for (const auto& pr : plan.pairs(kStoredPairDepth)) {
    pairs.push_back(json::array({gap_json(pr.source), gap_json(pr.target)}));
  }
  return {{"source_set", set_json(plan.source_set())},
          {"source_block", json::array({plan.source_block().start_cell, plan.source_block().cell_count})},
          {"target_set", set_json(plan.target_set())},
          {"target_block", json::array({plan.target_block().start_cell, plan.target_block().cell_count})},
          {"check_depth", kStoredPairDepth},
          {"pairs", pairs}};
}

CantorBlock read_block(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("block must be [start_cell, cell_count]");
  return {read_int(j[0], "start_cell"), read_int(j[1], "cell_count")};
}

std::shared_ptr<const TransportPlan> read_plan(const json& j) {
  std::shared_ptr<const TransportPlan> plan;
  try {
    plan = std::make_shared<const TransportPlan>(read_set(field(j, "source_set")), read_block(field(j, "source_block")),
                                                 read_set(field(j, "target_set")), read_block(field(j, "target_block")));
  } catch (const DomainError& e) {
    throw ParseError(std::string("transport plan: ") + e.what());
  }
  if (j.contains("pairs")) {
    const int depth = static_cast<int>(read_int(field(j, "check_depth"), "check_depth"));
    const auto rebuilt = plan->pairs(depth);
    const json& stored = j.at("pairs");
    bool same = stored.is_array() && stored.size() == rebuilt.size();
    for (std::size_t k = 0; same && k < rebuilt.size(); ++k) {
      same = stored[k] == json::array({gap_json(rebuilt[k].source), gap_json(rebuilt[k].target)});
    }
    if (!same) throw ParseError("transport plan pairs do not match the rebuilt plan");
  }
  return plan;
}

json map_json(const MonotoneMap& f, std::vector<const TransportPlan*>& plans, json& plan_list) {
  if (f.is_composite()) throw DomainError("cannot serialise a lazy composition");
  json j;
  if (f.is_translation()) {
    if (f.exact_left_offset()) j["translation"] = rat(*f.exact_left_offset());
    else j["translation"] = f.left_offset();
    return j;
  }
  if (f.is_affine()) {
    json pts = json::array();
    for (const auto& [x, y] : f.exact_breakpoints()) pts.push_back(json::array({rat(x), rat(y)}));
    j["breakpoints"] = pts;
    return j;
  }
  json segs = json::array();
  for (const Segment& s : f.segments()) {
    if (const auto* a = std::get_if<AffineSegment>(&s)) {
      segs.push_back({{"kind", "affine"}, {"x0", rat(a->x0)}, {"y0", rat(a->y0)}, {"x1", rat(a->x1)}, {"y1", rat(a->y1)}});
    } else if (const auto* u = std::get_if<UnitAffineSegment>(&s)) {
      segs.push_back({{"kind", "unit_affine"}, {"x0", u->x0}, {"y0", u->y0}, {"x1", u->x1}, {"y1", u->y1},
                      {"u0", u->u0}, {"v0", u->v0}, {"slope", u->slope}});
    } else {
      const auto& t = std::get<TransportSegment>(s);
      std::size_t idx = 0;
      while (idx < plans.size() && plans[idx] != t.plan.get()) ++idx;
      if (idx == plans.size()) {
        plans.push_back(t.plan.get());
        plan_list.push_back(plan_json(*t.plan));
      }
      segs.push_back({{"kind", "transport"}, {"x0", rat(t.x0)}, {"y0", rat(t.y0)}, {"x1", rat(t.x1)},
                      {"y1", rat(t.y1)}, {"plan", idx}, {"inverted", t.inverted}});
    }
  }
  j["segments"] = segs;
  return j;
}

MonotoneMap read_real_map(const json& j, const std::vector<std::shared_ptr<const TransportPlan>>& plans) {
  if (j.contains("translation")) {
    const json& t = j.at("translation");
    if (t.is_string() || t.is_number_integer()) return MonotoneMap::translation(read_rational(t, "translation"));
    return MonotoneMap::translation(read_double(t, "translation"));
  }
  if (j.contains("breakpoints")) {
    std::vector<std::pair<Rational, Rational>> pts;
    for (const json& pt : j.at("breakpoints")) {
      if (!pt.is_array() || pt.size() != 2) throw ParseError("breakpoint must be [x, y]");
      pts.emplace_back(read_rational(pt[0], "x"), read_rational(pt[1], "y"));
    }
    if (pts.empty()) throw ParseError("empty breakpoint list");
    return MonotoneMap::from_breakpoints(pts);
  }
  if (!j.contains("segments")) throw ParseError("map needs translation, breakpoints or segments");
  std::vector<Segment> segs;
  for (const json& s : j.at("segments")) {
    const std::string kind = field(s, "kind").get<std::string>();
    if (kind == "affine") {
      segs.emplace_back(AffineSegment{read_rational(field(s, "x0"), "x0"), read_rational(field(s, "y0"), "y0"),
                                      read_rational(field(s, "x1"), "x1"), read_rational(field(s, "y1"), "y1")});
    } else if (kind == "unit_affine") {
      segs.emplace_back(UnitAffineSegment{read_double(field(s, "x0"), "x0"), read_double(field(s, "y0"), "y0"),
                                          read_double(field(s, "x1"), "x1"), read_double(field(s, "y1"), "y1"),
                                          read_double(field(s, "u0"), "u0"), read_double(field(s, "v0"), "v0"),
                                          read_double(field(s, "slope"), "slope")});
    } else if (kind == "transport") {
      const auto idx = read_int(field(s, "plan"), "plan");
      if (idx < 0 || static_cast<std::size_t>(idx) >= plans.size()) throw ParseError("plan index out of range");
      TransportSegment t{read_rational(field(s, "x0"), "x0"), read_rational(field(s, "y0"), "y0"),
                         read_rational(field(s, "x1"), "x1"), read_rational(field(s, "y1"), "y1"),
                         plans[static_cast<std::size_t>(idx)], s.value("inverted", false)};
      segs.emplace_back(std::move(t));
    } else {
      throw ParseError("unknown segment kind \"" + kind + "\"");
    }
  }
  return MonotoneMap::from_segments(std::move(segs));
}

MonotoneMap read_unit_map(const json& j) {
  UnitPiecewiseLinear f;
  for (const json& pt : field(j, "breakpoints")) {
    if (!pt.is_array() || pt.size() != 2) throw ParseError("breakpoint must be [u, v]");
    f.points.emplace_back(read_double(pt[0], "u"), read_double(pt[1], "v"));
  }
  f.check();
  return transport_map(f);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!out) throw ParseError("write failed for " + path.string());
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

json sup_json(const SupBounds& b) { return {{"lower", b.lower}, {"upper", b.upper}, {"exact", b.exact}}; }

json distance_json(const SystemDistance& d) {
  return {{"d0_sup", sup_json(d.d0_sup)}, {"d1_sup", sup_json(d.d1_sup)}, {"dp", d.dp},
          {"d_m_lower", d.d_m_lower}, {"d_m_upper", d.d_m_upper}, {"d_0", d.d_0}};
}

json validity_json(const RandomSystem& s) {
  const ValidityReport v = validate(s);
  json conds = json::array();
  for (const auto& c : v.conditions) {
    conds.push_back({{"name", c.name}, {"verdict", to_string(c.verdict)}, {"detail", c.detail}});
  }
  return {{"valid", v.valid()},
          {"conditions", conds},
          {"lambda_minus", v.lyapunov.lambda_minus},
          {"lambda_plus", v.lyapunov.lambda_plus}};
}

json chain_json(const BoxChain& c) {
  json boxes = json::array();
  for (const Box& b : c.boxes) boxes.push_back(json::array({rat(b.lx), rat(b.rx), rat(b.ly), rat(b.ry)}));
  return {{"boxes", boxes}, {"L", json::array({rat(c.Lx), rat(c.Ly)})}, {"R", json::array({rat(c.Rx), rat(c.Ry)})}};
}

BoxChain read_chain(const json& j) {
  BoxChain c;
  for (const json& b : field(j, "boxes")) {
    if (!b.is_array() || b.size() != 4) throw ParseError("box must be [lx, rx, ly, ry]");
    c.boxes.push_back({read_rational(b[0], "lx"), read_rational(b[1], "rx"), read_rational(b[2], "ly"),
                       read_rational(b[3], "ry")});
  }
  const json& L = field(j, "L");
  const json& R = field(j, "R");
  if (L.size() != 2 || R.size() != 2) throw ParseError("entry/exit must be [x, y]");
  c.Lx = read_rational(L[0], "Lx");
  c.Ly = read_rational(L[1], "Ly");
  c.Rx = read_rational(R[0], "Rx");
  c.Ry = read_rational(R[1], "Ry");
  return c;
}

json offset_json(const ExactOffset& e) { return {{"q", rat(e.q)}, {"r", rat(e.r)}, {"value", e.to_double()}}; }

ExactOffset read_offset(const json& j) {
  return {read_rational(field(j, "q"), "q"), read_rational(field(j, "r"), "r")};
}

bool same_boxes(const BoxChain& a, const BoxChain& b) {
  if (a.boxes.size() != b.boxes.size()) return false;
  for (std::size_t k = 0; k < a.boxes.size(); ++k) {
    const Box& x = a.boxes[k];
    const Box& y = b.boxes[k];
    if (x.lx != y.lx || x.rx != y.rx || x.ly != y.ly || x.ry != y.ry) return false;
  }
  return a.Lx == b.Lx && a.Ly == b.Ly && a.Rx == b.Rx && a.Ry == b.Ry;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string system_to_json(const RandomSystem& system, const std::string& provenance) {
  std::vector<const TransportPlan*> seen;
  json plans = json::array();
  json maps = json::array();
  maps.push_back(map_json(system.f0, seen, plans));
  maps.push_back(map_json(system.f1, seen, plans));
  json j;
  j["format"] = "rds-system";
  j["version"] = 1;
  j["coordinates"] = "real";
  if (system.p_exact) j["p"] = rat(*system.p_exact);
  else j["p"] = system.p;
  if (!plans.empty()) j["plans"] = plans;
  j["maps"] = maps;
  if (!provenance.empty()) j["provenance"] = parse(provenance);
  return j.dump(2);
}

RandomSystem system_from_json(const std::string& text) {
  const json j = parse(text);
  try {
    const std::string coords = j.value("coordinates", "real");
    const json& maps = field(j, "maps");
    if (!maps.is_array() || maps.size() != 2) throw ParseError("\"maps\" must list exactly two maps");
    MonotoneMap f[2];
    if (coords == "unit") {
      f[0] = read_unit_map(maps[0]);
      f[1] = read_unit_map(maps[1]);
    } else if (coords == "real") {
      std::vector<std::shared_ptr<const TransportPlan>> plans;
      if (j.contains("plans")) {
        for (const json& pj : j.at("plans")) plans.push_back(read_plan(pj));
      }
      f[0] = read_real_map(maps[0], plans);
      f[1] = read_real_map(maps[1], plans);
    } else {
      throw ParseError("coordinates must be \"real\" or \"unit\"");
    }
    const json& p = field(j, "p");
    if (p.is_string() || p.is_number_integer()) return RandomSystem(f[0], f[1], read_rational(p, "p"));
    return RandomSystem(f[0], f[1], read_double(p, "p"));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed system: ") + e.what());
  }
}

RandomSystem load_system(const std::filesystem::path& path) { return system_from_json(read_file(path)); }

void save_system(const std::filesystem::path& path, const RandomSystem& system, const std::string& provenance) {
  write_file(path, system_to_json(system, provenance));
}

bool identical(const MonotoneMap& a, const MonotoneMap& b) {
  if (a.is_composite() || b.is_composite()) return false;
  if (a.left_offset() != b.left_offset() || a.right_offset() != b.right_offset()) return false;
  if (a.exact_left_offset() != b.exact_left_offset() || a.exact_right_offset() != b.exact_right_offset()) return false;
  const auto& sa = a.segments();
  const auto& sb = b.segments();
  if (sa.size() != sb.size()) return false;
  for (std::size_t k = 0; k < sa.size(); ++k) {
    if (sa[k].index() != sb[k].index()) return false;
    if (const auto* x = std::get_if<AffineSegment>(&sa[k])) {
      const auto& y = std::get<AffineSegment>(sb[k]);
      if (x->x0 != y.x0 || x->y0 != y.y0 || x->x1 != y.x1 || x->y1 != y.y1) return false;
    } else if (const auto* u = std::get_if<UnitAffineSegment>(&sa[k])) {
      const auto& y = std::get<UnitAffineSegment>(sb[k]);
      if (u->x0 != y.x0 || u->y0 != y.y0 || u->x1 != y.x1 || u->y1 != y.y1 || u->u0 != y.u0 || u->v0 != y.v0 ||
          u->slope != y.slope)
        return false;
    } else {
      const auto& x = std::get<TransportSegment>(sa[k]);
      const auto& y = std::get<TransportSegment>(sb[k]);
      if (x.x0 != y.x0 || x.y0 != y.y0 || x.x1 != y.x1 || x.y1 != y.y1 || x.inverted != y.inverted) return false;
      const TransportPlan& p = *x.plan;
      const TransportPlan& q = *y.plan;
      if (p.source_lo() != q.source_lo() || p.source_hi() != q.source_hi() || p.target_lo() != q.target_lo() ||
          p.target_hi() != q.target_hi() || p.source_set().cell_width != q.source_set().cell_width ||
          p.target_set().cell_width != q.target_set().cell_width ||
          !p.source_set().same_set_as(q.source_set()) || !p.target_set().same_set_as(q.target_set()))
        return false;
    }
  }
  return true;
}

bool identical(const RandomSystem& a, const RandomSystem& b) {
  return a.p == b.p && a.p_exact == b.p_exact && identical(a.f0, b.f0) && identical(a.f1, b.f1);
}

std::string descriptor_to_json(const CantorDescriptor& d) {
  json j;
  j["kind"] = "cantor";
  j["set"] = set_json(d.set);
  j["params"] = {{"R", rat(d.params.R)}, {"M", d.params.M}, {"M_prime", d.params.M_prime}, {"eps", rat(d.params.eps)}};
  j["chain0"] = chain_json(d.chain0);
  j["chain1"] = chain_json(d.chain1);
  return j.dump(2);
}

std::string descriptor_to_json(const MinimalDescriptor& d) {
  json j;
  j["kind"] = "minimal";
  j["eta0"] = offset_json(d.offsets.eta0);
  j["eta1"] = offset_json(d.offsets.eta1);
  j["offset_eps"] = rat(d.offsets.eps);
  j["R"] = rat(d.R);
  j["eps"] = rat(d.eps);
  return j.dump(2);
}

void descriptor_from_json(const std::string& text, Bundle& into) {
  const json j = parse(text);
  try {
    const std::string kind = field(j, "kind").get<std::string>();
    if (kind == "cantor") {
      CantorDescriptor d;
      d.set = read_set(field(j, "set"));
      const json& p = field(j, "params");
      d.params.R = read_rational(field(p, "R"), "R");
      d.params.M = static_cast<int>(read_int(field(p, "M"), "M"));
      d.params.M_prime = static_cast<int>(read_int(field(p, "M_prime"), "M_prime"));
      d.params.eps = read_rational(field(p, "eps"), "eps");
      d.chain0 = read_chain(field(j, "chain0"));
      d.chain1 = read_chain(field(j, "chain1"));
      into.cantor = std::move(d);
    } else if (kind == "minimal") {
      MinimalDescriptor d;
      d.offsets.eta0 = read_offset(field(j, "eta0"));
      d.offsets.eta1 = read_offset(field(j, "eta1"));
      d.offsets.eps = read_rational(field(j, "offset_eps"), "offset_eps");
      d.R = read_rational(field(j, "R"), "R");
      d.eps = read_rational(field(j, "eps"), "eps");
      into.minimal = std::move(d);
    } else {
      throw ParseError("unknown descriptor kind \"" + kind + "\"");
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed descriptor: ") + e.what());
  }
}

bool operator==(const CantorDescriptor& a, const CantorDescriptor& b) {
  return a.set.cell_width == b.set.cell_width && a.set.origin == b.set.origin && a.params.R == b.params.R &&
         a.params.M == b.params.M && a.params.M_prime == b.params.M_prime && a.params.eps == b.params.eps &&
         same_boxes(a.chain0, b.chain0) && same_boxes(a.chain1, b.chain1);
}

bool operator==(const MinimalDescriptor& a, const MinimalDescriptor& b) {
  return a.offsets.eta0 == b.offsets.eta0 && a.offsets.eta1 == b.offsets.eta1 && a.offsets.eps == b.offsets.eps &&
         a.R == b.R && a.eps == b.eps;
}

std::string report_json(const CantorPerturbation& g, const Rational& requested_eps) {
  json j;
  j["mode"] = "cantor";
  j["eps_requested"] = rat(requested_eps);
  j["eps_effective"] = rat(g.params.eps);
  j["M"] = g.params.M;
  j["M_prime"] = g.params.M_prime;
  j["R"] = rat(g.params.R);
  j["boxes"] = {g.chain0.boxes.size(), g.chain1.boxes.size()};
  j["retries"] = g.retries;
  j["distance"] = distance_json(g.distance);
  j["d_m_below_eps"] = g.distance.d_m_upper < to_double(requested_eps);
  j["validity"] = validity_json(g.system);
  return j.dump(2);
}

std::string report_json(const MinimalPerturbation& g, const Rational& requested_eps) {
  json j;
  j["mode"] = "minimal";
  j["eps_requested"] = rat(requested_eps);
  j["eps_effective"] = rat(g.eps);
  j["R"] = rat(g.R);
  j["eta0"] = offset_json(g.offsets.eta0);
  j["eta1"] = offset_json(g.offsets.eta1);
  j["distance"] = distance_json(g.distance);
  j["d_m_below_eps"] = g.distance.d_m_upper < to_double(requested_eps);
  j["validity"] = validity_json(g.system);
  return j.dump(2);
}

namespace {

void prepare_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ParseError("cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

void save_bundle(const std::filesystem::path& dir, const CantorPerturbation& g, const Rational& eps) {
  prepare_dir(dir);
  const CantorDescriptor d{g.set, g.params, g.chain0, g.chain1};
  json prov = {{"construction", "cantor"}, {"eps", rat(eps)}, {"M", g.params.M}, {"M_prime", g.params.M_prime}};
  write_file(dir / "system.json", system_to_json(g.system, prov.dump()));
  write_file(dir / "descriptor.json", descriptor_to_json(d));
  write_file(dir / "report.json", report_json(g, eps));
}

void save_bundle(const std::filesystem::path& dir, const MinimalPerturbation& g, const Rational& eps) {
  prepare_dir(dir);
  const MinimalDescriptor d{g.offsets, g.R, g.eps};
  json prov = {{"construction", "minimal"}, {"eps", rat(eps)}, {"R", rat(g.R)}};
  write_file(dir / "system.json", system_to_json(g.system, prov.dump()));
  write_file(dir / "descriptor.json", descriptor_to_json(d));
  write_file(dir / "report.json", report_json(g, eps));
}

Bundle load_bundle(const std::filesystem::path& dir) {
  Bundle b;
  b.system = load_system(dir / "system.json");
  descriptor_from_json(read_file(dir / "descriptor.json"), b);
  if (std::filesystem::exists(dir / "report.json")) b.report = read_file(dir / "report.json");
  return b;
}

RandomSystem load_system_or_bundle(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) return load_system(path / "system.json");
  return load_system(path);
}

void write_cdf_csv(std::ostream& out, const CdfEnvelope& env, std::int64_t max_rows) {
  const TailCertificate& c = env.certificate;
  out << "# w_lo: " << num(env.w_lo) << '\n'
      << "# w_hi: " << num(env.w_hi) << '\n'
      << "# tail_M: " << num(c.M) << '\n'
      << "# tail_alpha: " << num(c.alpha) << '\n'
      << "# tail_x0: " << num(c.x0) << '\n'
      << "# tail_mass_lo: " << num(env.tail_mass_lo) << '\n'
      << "# tail_mass_hi: " << num(env.tail_mass_hi) << '\n'
      << "# gap: " << num(env.gap) << '\n'
      << "# converged: " << (env.converged ? "true" : "false") << '\n'
      << "# iterations: " << env.iterations << '\n'
      << "# max_atom_weight: " << num(env.max_atom_weight) << '\n'
      << "x_real,x_unit,cdf_lower,cdf_upper\n";
  // jump positions of either staircase, thinned to at most max_rows
  std::vector<double> xs;
  xs.reserve(env.lower.x.size() + env.upper.x.size());
  std::merge(env.lower.x.begin(), env.lower.x.end(), env.upper.x.begin(), env.upper.x.end(), std::back_inserter(xs));
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (max_rows > 0 && static_cast<std::int64_t>(xs.size()) > max_rows) {
    std::vector<double> grid;
    for (std::int64_t k = 0; k < max_rows; ++k) {
      grid.push_back(env.w_lo + (env.w_hi - env.w_lo) * static_cast<double>(k) / static_cast<double>(max_rows - 1));
    }
    xs = std::move(grid);
  }
  for (double x : xs) {
    out << num(x) << ',' << num(h_inverse(x)) << ',' << num(env.lower.value(x)) << ',' << num(env.upper.value(x))
        << '\n';
  }
}

void write_orbit_csv(std::ostream& out, const std::vector<OrbitPoint>& orbit) {
  out << "step,symbol,x_real,x_unit\n";
  for (const auto& o : orbit) {
    out << o.step << ',' << o.symbol << ',' << num(o.x) << ',' << num(h_inverse(o.x)) << '\n';
  }
}

}  // namespace rds
