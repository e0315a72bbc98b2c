#include "equitor/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace equitor {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const json& require(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where + ": missing \"" + key + "\"");
  return *it;
}

json parse_json(std::string_view text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(where + ": " + e.what());
  }
}

Int to_int(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    Int v;
    if (v.set_str(j.get<std::string>(), 10) != 0) throw InputError(where + ": bad integer");
    return v;
  }
  throw InputError(where + ": expected an integer");
}

Rational to_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError(where + ": expected an integer or a rational string such as \"1/2\"");
}

IntVector to_int_vector(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  IntVector v;
  for (const auto& x : j) v.push_back(to_int(x, where));
  return v;
}

IntMatrix to_matrix(const json& j, std::size_t d, const std::string& where) {
  if (!j.is_array() || j.size() != d) throw InputError(where + ": expected " + std::to_string(d) + " rows");
  IntMatrix m(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    IntVector row = to_int_vector(j[r], where);
    if (row.size() != d) throw InputError(where + ": row of wrong length");
    m.set_row(r, row);
  }
  return m;
}

AffineMap to_affine(const json& j, std::size_t d, const std::string& where) {
  IntMatrix m = to_matrix(require(j, "matrix", where), d, where + " matrix");
  const json& l = require(j, "lambda", where);
  if (!l.is_array() || l.size() != d) throw InputError(where + ": lambda must have length " + std::to_string(d));
  RationalVector lambda;
  for (const auto& x : l) lambda.push_back(to_rational(x, where + " lambda"));
  return AffineMap{std::move(m), QmodZVector(lambda)};
}

std::size_t pair_dimension(const json& pairs, const std::string& where) {
  if (!pairs.is_array() || pairs.empty()) throw InputError(where + ": expected a nonempty array");
  const json& m = require(pairs[0], "matrix", where);
  if (!m.is_array()) throw InputError(where + ": matrix must be an array of rows");
  return m.size();
}

Cone to_cone(const json& j, std::size_t base, std::size_t rays, const std::string& where) {
  Cone c;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InputError(where + ": ray indices must be integers");
    long i = x.get<long>();
    if (i < static_cast<long>(base) || i - static_cast<long>(base) >= static_cast<long>(rays))
      throw InputError(where + ": ray index " + std::to_string(i) + " out of range");
    c.push_back(static_cast<std::size_t>(i) - base);
  }
  std::sort(c.begin(), c.end());
  return c;
}

Fan parse_fan(const json& j, std::size_t base, const std::vector<IntMatrix>& generator_matrices) {
  Fan f;
  f.dimension = require(j, "dimension", "fan").get<std::size_t>();
  for (const auto& r : require(j, "rays", "fan")) {
    IntVector v = to_int_vector(r, "fan ray");
    if (v.size() != f.dimension) throw ValidationError("fan", "ray of wrong dimension");
    f.rays.push_back(std::move(v));
  }
  if (j.contains("max_cones")) {
    for (const auto& c : j["max_cones"]) f.max_cones.push_back(to_cone(c, base, f.rays.size(), "fan cone"));
    return f;
  }
  std::vector<Cone> reps;
  for (const auto& c : require(j, "orbit_representatives", "fan"))
    reps.push_back(to_cone(c, base, f.rays.size(), "fan orbit representative"));
  if (generator_matrices.empty() && !j.value("minus_one", false))
    throw InputError("fan: orbit representatives need an action to expand under");
  std::vector<Permutation> perms;
  for (const auto& m : generator_matrices) perms.push_back(induced_ray_permutation(f, m));
  if (j.value("minus_one", false)) {
    auto neg = negation_permutation(f);
    if (!neg) throw ValidationError("fan", "rays are not centrally symmetric");
    perms.push_back(*neg);
  }
  f.max_cones = expand_orbits(reps, perms);
  return f;
}

std::vector<std::string> names_of(const json& group) {
  std::vector<std::string> names;
  for (const auto& n : require(group, "generators", "group")) names.push_back(n.get<std::string>());
  return names;
}

ordered_json order_value(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

ordered_json class_json(const ClassSummary& c) {
  ordered_json j;
  j["trivial"] = c.trivial;
  j["order"] = order_value(c.order);
  j["cocycle"] = c.representative;
  return j;
}

std::string verdict_string(bool unirational) { return unirational ? "Unirational" : "NotUnirational"; }

std::string coords_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

}  // namespace

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot read " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ------------------------------------------------------------- ring elements

GroupRingElement parse_ring_element(const FiniteGroup& g, std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw InputError("empty group ring element");
  GroupRingElement out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') {
      if (s[end] == '^' && end + 1 < s.size() && s[end + 1] == '-') ++end;
      ++end;
    }
    std::string term = s.substr(pos, end - pos);
    if (term.empty()) throw InputError("bad group ring element '" + std::string(text) + "'");
    std::size_t k = 0;
    while (k < term.size() && std::isdigit(static_cast<unsigned char>(term[k]))) ++k;
    Int coeff = k ? Int(term.substr(0, k)) : Int(1);
    std::string word = term.substr(k);
    if (!word.empty() && word[0] == '*') word.erase(0, 1);
    out = out + GroupRingElement::unit(g.element_from_word(word), coeff * sign);
    pos = end;
  }
  return out;
}

std::string format_ring_element(const FiniteGroup& g, const GroupRingElement& x) {
  if (x.is_zero()) return "0";
  std::string s;
  for (const auto& [e, c] : x.terms()) {
    Int a = abs(c);
    if (s.empty()) s += c < 0 ? "-" : "";
    else s += c < 0 ? " - " : " + ";
    const std::string word = e == 0 ? "1" : g.label(e);
    if (a == 1) s += word;
    else s += a.get_str() + (e == 0 ? "" : "*" + word);
  }
  return s;
}

// ---------------------------------------------------------------- resolution

ResolutionPtr parse_resolution(std::string_view text, GroupPtr group, std::string name) {
  json j = parse_json(text, "resolution");
  const json& b = require(j, "boundaries", "resolution");
  if (!b.is_array() || b.empty()) throw InputError("resolution: boundaries must be a nonempty array");
  std::vector<std::size_t> ranks{1};
  std::vector<RingMatrix> boundaries;
  for (std::size_t n = 0; n < b.size(); ++n) {
    const std::string where = "resolution d_" + std::to_string(n + 1);
    RingMatrix d;
    for (const auto& row : b[n]) {
      if (!row.is_array() || row.size() != ranks.back())
        throw InputError(where + ": rows must have " + std::to_string(ranks.back()) + " entries");
      std::vector<GroupRingElement> r;
      for (const auto& x : row) {
        if (x.is_number_integer()) r.push_back(GroupRingElement::unit(0, Int(x.get<long>())));
        else r.push_back(parse_ring_element(*group, x.get<std::string>()));
      }
      d.push_back(std::move(r));
    }
    if (d.empty()) throw InputError(where + ": no rows");
    ranks.push_back(d.size());
    boundaries.push_back(std::move(d));
  }
  return std::make_shared<const Resolution>(std::move(group), std::move(ranks), std::move(boundaries),
                                            std::move(name));
}

ResolutionPtr load_resolution(const std::filesystem::path& file, GroupPtr group) {
  return parse_resolution(read_file(file), std::move(group), file.stem().string());
}

std::string resolution_to_json(const Resolution& r) {
  ordered_json j;
  j["boundaries"] = ordered_json::array();
  for (std::size_t n = 1; n <= r.length(); ++n) {
    ordered_json d = ordered_json::array();
    for (const auto& row : r.boundary(n)) {
      ordered_json jr = ordered_json::array();
      for (const auto& x : row) jr.push_back(format_ring_element(*r.group(), x));
      d.push_back(jr);
    }
    j["boundaries"].push_back(d);
  }
  return j.dump(1);
}

// ------------------------------------------------------------------- problem

Problem parse_problem(std::string_view text, const std::filesystem::path& base_dir, bool allow_missing_fan) {
  json j = parse_json(text, "problem");
  Problem p;
  p.name = j.value("name", std::string());
  p.index_base = j.value("index_base", std::size_t{0});
  if (p.index_base > 1) throw InputError("index_base must be 0 or 1");
  const json& group = require(j, "group", "problem");
  const json& action = require(j, "action", "problem");
  std::vector<std::string> names = names_of(group);
  std::vector<IntMatrix> generator_matrices;

  if (group.contains("table")) {
    std::vector<std::vector<Element>> table = group["table"].get<std::vector<std::vector<Element>>>();
    std::vector<Element> gens = require(group, "generator_elements", "group").get<std::vector<Element>>();
    if (gens.size() != names.size()) throw InputError("group: generator_elements and generators differ in length");
    p.group = std::make_shared<const FiniteGroup>(std::move(table), std::move(gens), names);
    if (action.contains("assignment")) {
      const json& a = action["assignment"];
      const std::size_t d = pair_dimension(a, "action assignment");
      for (const auto& x : a) p.assignment.push_back(to_affine(x, d, "action assignment"));
    } else {
      const json& a = require(action, "generators", "action");
      const std::size_t d = pair_dimension(a, "action generators");
      std::vector<AffineMap> pairs;
      for (const auto& x : a) pairs.push_back(to_affine(x, d, "action generator"));
      p.assignment = extend_assignment(*p.group, pairs);
    }
    for (Element e : p.group->generators()) generator_matrices.push_back(p.assignment.at(e).matrix);
  } else {
    const json& a = require(action, "generators", "action");
    if (a.size() != names.size()) throw InputError("action: one pair per group generator is required");
    const std::size_t d = pair_dimension(a, "action generators");
    std::vector<AffineMap> pairs;
    for (const auto& x : a) pairs.push_back(to_affine(x, d, "action generator"));
    for (const auto& x : pairs) generator_matrices.push_back(x.matrix);
    AffineGroup ag = affine_group_closure(pairs, names, group.value("max_order", std::size_t{64}));
    p.group = ag.group;
    p.assignment = std::move(ag.assignment);
  }

  if (j.contains("fan")) {
    p.fan = parse_fan(j["fan"], p.index_base, generator_matrices);
  } else if (!allow_missing_fan) {
    throw InputError("problem: missing \"fan\"");
  }
  if (j.contains("resolution")) {
    const json& r = j["resolution"];
    if (r.is_string()) p.resolution = load_resolution(base_dir / r.get<std::string>(), p.group);
    else p.resolution = parse_resolution(r.dump(), p.group);
  }
  return p;
}

Problem load_problem(const std::filesystem::path& file, bool allow_missing_fan) {
  Problem p = parse_problem(read_file(file), file.parent_path(), allow_missing_fan);
  if (p.name.empty()) p.name = file.stem().string();
  return p;
}

Fan load_fan(const std::filesystem::path& file, std::size_t* index_base) {
  std::string text = read_file(file);
  json j = parse_json(text, "fan");
  if (j.contains("group")) {
    Problem p = parse_problem(text, file.parent_path());
    if (index_base) *index_base = p.index_base;
    return p.fan;
  }
  const std::size_t base = j.value("index_base", std::size_t{0});
  if (base > 1) throw InputError("index_base must be 0 or 1");
  if (index_base) *index_base = base;
  return parse_fan(j.contains("fan") ? j["fan"] : j, base, {});
}

// ------------------------------------------------------------------- lattice

LatticeInput parse_lattice(std::string_view text, GroupPtr group) {
  json j = parse_json(text, "lattice");
  const json& ms = require(j, "matrices", "lattice");
  if (!ms.is_array() || ms.size() != group->generators().size())
    throw InputError("lattice: one matrix per group generator is required");
  std::vector<IntMatrix> action;
  for (const auto& m : ms) action.push_back(to_matrix(m, m.size(), "lattice matrix"));
  LatticeInput out;
  out.lattice = GLattice::from_generators(std::move(group), action, j.value("label", std::string("L")));
  std::string coeffs = j.value("coefficients", std::string("Z"));
  if (coeffs == "Z") out.kind = Coefficients::Integral;
  else if (coeffs == "Q/Z") out.kind = Coefficients::QmodZ;
  else throw InputError("lattice: coefficients must be \"Z\" or \"Q/Z\"");
  return out;
}

LatticeInput load_lattice(const std::filesystem::path& file, GroupPtr group) {
  return parse_lattice(read_file(file), std::move(group));
}

// ------------------------------------------------------------------- reports

std::string report_to_json(const ObstructionReport& r, std::size_t index_base) {
  ordered_json j;
  j["group"] = {{"generators", r.group}, {"order", r.group_order}};
  j["resolution"] = {{"name", r.resolution}, {"ranks", r.resolution_ranks}};
  j["fan"] = {{"dimension", r.dimension}, {"rays", r.rays},         {"max_cones", r.max_cones},
              {"smooth", r.smooth},       {"complete", r.complete}, {"projective", r.projective}};
  j["pic"] = r.pic.to_string();
  j["h1_translation"] = r.h1_translation.to_string();
  j["rho"] = class_json(r.rho);
  j["obstruction"] = class_json(r.partial);
  j["obstruction_shifted"] = class_json(r.shifted);
  j["verdict"] = verdict_string(r.unirational);
  j["witness"] = r.witness ? ordered_json(*r.witness) : ordered_json(nullptr);
  j["h1_pic"] = r.h1_pic.to_string();
  j["am2"] = r.am2.to_string();
  j["am3"] = r.am3.to_string();
  ordered_json subs = ordered_json::array();
  for (const auto& s : r.subgroups) {
    ordered_json js;
    js["subgroup"] = s.label;
    js["order"] = s.order;
    js["h1_pic"] = s.h1_pic.to_string();
    js["am2"] = s.am2.to_string();
    js["am3"] = s.am3.to_string();
    subs.push_back(js);
  }
  j["subgroups"] = subs;
  if (r.condition_a) {
    bool all = true;
    ordered_json entries = ordered_json::array();
    for (const auto& e : *r.condition_a) {
      all = all && e.satisfied;
      ordered_json je;
      je["subgroup"] = e.label;
      je["order"] = e.subgroup.order();
      je["status"] = e.satisfied ? "SATISFIED" : "FAILED";
      je["witness"] = e.witness ? ordered_json(cone_to_string(*e.witness, index_base)) : ordered_json(nullptr);
      ordered_json fails = ordered_json::array();
      for (const auto& [cone, order] : e.failures)
        fails.push_back({{"cone", cone_to_string(cone, index_base)}, {"class_order", order_value(order)}});
      je["failures"] = fails;
      entries.push_back(je);
    }
    j["condition_a"] = {{"status", all ? "SATISFIED" : "FAILED"}, {"subgroups", entries}};
  } else {
    j["condition_a"] = nullptr;
  }
  if (r.pu) {
    ordered_json jp;
    jp["projectively_unirational"] = r.pu->projectively_unirational;
    jp["schur"] = r.pu->schur.to_string();
    jp["classes_tried"] = r.pu->classes_tried;
    jp["gamma"] = r.pu->gamma ? ordered_json(coords_string(*r.pu->gamma)) : ordered_json(nullptr);
    jp["gamma_order"] = order_value(r.pu->gamma_order);
    jp["extension_order"] = r.pu->extension_order;
    j["pu"] = jp;
  } else {
    j["pu"] = nullptr;
  }
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

std::string report_to_text(const ObstructionReport& r, std::size_t index_base) {
  std::ostringstream o;
  o << "group          " << r.group << ", order " << r.group_order << "\n";
  o << "resolution     " << r.resolution << ", ranks";
  for (auto k : r.resolution_ranks) o << ' ' << k;
  o << "\n";
  o << "fan            dimension " << r.dimension << ", " << r.rays << " rays, " << r.max_cones
    << " max cones, smooth " << (r.smooth ? "yes" : "no") << ", complete " << (r.complete ? "yes" : "no")
    << ", projective " << r.projective << "\n";
  o << "Pic            " << r.pic.to_string() << "\n";
  o << "H1(G, M^ (x) Q/Z)  " << r.h1_translation.to_string() << "\n";
  o << "rho            " << (r.rho.trivial ? "0" : "order " + r.rho.order.get_str()) << "  " << r.rho.representative
    << "\n";
  o << "d(1_Pic)       " << (r.partial.trivial ? "0" : "order " + r.partial.order.get_str()) << "\n";
  o << "H1(G, Pic)     " << r.h1_pic.to_string() << "\n";
  o << "Am2            " << r.am2.to_string() << "\n";
  o << "Am3            " << r.am3.to_string() << "\n";
  o << "verdict        " << verdict_string(r.unirational) << "\n";
  if (r.witness) o << "lift           " << *r.witness << "\n";
  if (!r.subgroups.empty()) {
    o << "subgroups\n";
    for (const auto& s : r.subgroups)
      o << "  " << s.label << " (order " << s.order << ")  H1 " << s.h1_pic.to_string() << "  Am2 "
        << s.am2.to_string() << "  Am3 " << s.am3.to_string() << "\n";
  }
  if (r.condition_a) {
    o << "condition A\n";
    for (const auto& e : *r.condition_a) {
      o << "  " << e.label << "  " << (e.satisfied ? "SATISFIED" : "FAILED");
      if (e.witness) o << "  fixed in orbit of " << cone_to_string(*e.witness, index_base);
      o << "\n";
      for (const auto& [cone, order] : e.failures)
        o << "    " << cone_to_string(cone, index_base) << " class of order " << order << "\n";
    }
  }
  if (r.pu) {
    o << "PU             " << (r.pu->projectively_unirational ? "yes" : "no") << ", H2(G, Q/Z) = "
      << r.pu->schur.to_string() << ", " << r.pu->classes_tried << " classes tried";
    if (r.pu->gamma)
      o << ", gamma " << coords_string(*r.pu->gamma) << " of order " << r.pu->gamma_order << ", extension of order "
        << r.pu->extension_order;
    o << "\n";
  }
  for (const auto& w : r.warnings) o << "warning: " << w << "\n";
  return o.str();
}

}  // namespace equitor
