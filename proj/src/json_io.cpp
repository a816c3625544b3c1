#include "npr/json_io.hpp"

#include "npr/errors.hpp"

#include <algorithm>
#include <limits>

namespace npr {

namespace {

bool looks_like_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

Json json_int(const Int& v) { return Json(v.str()); }

Json json_rat(const Rat& v) {
  return Json(boost::multiprecision::numerator(v).str() + "/" +
              boost::multiprecision::denominator(v).str());
}

Json json_int_vector(const std::vector<Int>& v) {
  Json arr = Json::array();
  for (const Int& x : v) arr.push_back(json_int(x));
  return arr;
}

Json json_matrix(const IntMatrix& m) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(json_int(m.at(i, j)));
    arr.push_back(std::move(row));
  }
  return arr;
}

Int parse_int(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (!looks_like_integer(s))
      fail(Error::Kind::Parse, what + ": \"" + s + "\" is not an integer");
    return Int(s);
  }
  fail(Error::Kind::Parse, what + ": expected an integer or a decimal string");
}

Rat parse_rat(const Json& j, const std::string& what) {
  if (j.is_number_integer() || j.is_number_unsigned())
    return Rat(parse_int(j, what));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const std::size_t slash = s.find('/');
    if (slash == std::string::npos) {
      if (!looks_like_integer(s))
        fail(Error::Kind::Parse, what + ": \"" + s + "\" is not a rational");
      return Rat(Int(s));
    }
    const std::string p = s.substr(0, slash);
    const std::string q = s.substr(slash + 1);
    if (!looks_like_integer(p) || !looks_like_integer(q))
      fail(Error::Kind::Parse, what + ": \"" + s + "\" is not a rational");
    Int den(q);
    if (den == 0) fail(Error::Kind::Parse, what + ": zero denominator");
    return Rat(Int(p)) / Rat(den);
  }
  fail(Error::Kind::Parse, what + ": expected a rational (\"p/q\") value");
}

std::size_t parse_size(const Json& j, const std::string& what) {
  Int v = parse_int(j, what);
  if (v < 0 || v > Int(std::numeric_limits<std::size_t>::max() / 2))
    fail(Error::Kind::Parse, what + ": index out of range");
  return static_cast<std::size_t>(v);
}

std::vector<Int> parse_int_vector(const Json& j, const std::string& what) {
  if (!j.is_array())
    fail(Error::Kind::Parse, what + ": expected an array of integers");
  std::vector<Int> v;
  v.reserve(j.size());
  for (const Json& x : j) v.push_back(parse_int(x, what));
  return v;
}

std::vector<std::vector<Int>> parse_int_arrays(const Json& j,
                                               const std::string& what) {
  if (!j.is_array())
    fail(Error::Kind::Parse, what + ": expected an array of integer arrays");
  std::vector<std::vector<Int>> v;
  v.reserve(j.size());
  for (const Json& row : j) v.push_back(parse_int_vector(row, what));
  return v;
}

void check_fields(const Json& obj, const std::vector<std::string>& required,
                  const std::vector<std::string>& optional,
                  const std::string& what) {
  if (!obj.is_object())
    fail(Error::Kind::Parse, what + ": expected a JSON object");
  for (const std::string& key : required)
    if (!obj.contains(key))
      fail(Error::Kind::Parse, what + ": missing field \"" + key + "\"");
  for (const auto& item : obj.items()) {
    const std::string& key = item.key();
    if (std::find(required.begin(), required.end(), key) == required.end() &&
        std::find(optional.begin(), optional.end(), key) == optional.end())
      fail(Error::Kind::Parse, what + ": unknown field \"" + key + "\"");
  }
}

Json to_json(const GroupSpec& spec) { return Json(to_string(spec)); }

Json to_json(const Element& e) { return json_int_vector(e.coords); }

Json to_json(const ElementSet& e) {
  Json out = Json::object();
  out["group"] = to_json(e.spec);
  Json arr = Json::array();
  for (const Element& g : e.elements) arr.push_back(to_json(g));
  out["elements"] = std::move(arr);
  return out;
}

Json to_json(const DualPoint& x) {
  Json out = Json::object();
  Json fr = Json::array();
  for (const Rat& q : x.free_coords) fr.push_back(json_rat(q));
  out["free"] = std::move(fr);
  out["torsion"] = json_int_vector(x.torsion_coords);
  return out;
}

Json to_json(const RelationLattice& l) {
  Json out = Json::object();
  out["set_size"] = l.set_size;
  out["basis"] = json_matrix(l.basis);
  return out;
}

Json to_json(const NprCertificate& c) {
  Json out = Json::object();
  if (c.holds) {
    out["verdict"] = "holds";
  } else {
    out["verdict"] = "fails";
    out["relation"] = json_int_vector(c.relation);
    out["index"] = c.index;
  }
  return out;
}

Json to_json(const IndependenceCertificate& c) {
  Json out = Json::object();
  if (c.holds) {
    out["verdict"] = "holds";
  } else {
    out["verdict"] = "fails";
    out["relation"] = json_int_vector(c.relation);
    out["index"] = c.index;
  }
  return out;
}

Json to_json(const InterpolationResult& r) {
  Json out = Json::object();
  if (r.feasible)
    out["witness"] = to_json(r.witness);
  else
    out["infeasible"] = json_int_vector(r.infeasible_combination);
  return out;
}

Json to_json(const KroneckerEstimate& k) {
  Json out = Json::object();
  out["epsilon"] = k.epsilon;
  out["worst_distance"] = json_rat(k.worst_distance);
  out["grid"] = json_int(k.grid);
  out["worst_phi"] = json_int_vector(k.worst_phi);
  return out;
}

Json to_json(const QuotientMap& q) {
  Json out = Json::object();
  out["source"] = to_json(q.source);
  out["target"] = to_json(q.target);
  out["kernel"] = q.kernel_description;
  Json rules = Json::array();
  for (const CoordRule& r : q.rules) {
    Json entry = Json::object();
    switch (r.kind) {
      case CoordRule::Kind::Pass:
        entry["action"] = "pass";
        break;
      case CoordRule::Kind::Drop:
        entry["action"] = "drop";
        break;
      case CoordRule::Kind::Mod:
        entry["action"] = "mod";
        entry["modulus"] = json_int(r.modulus);
        break;
    }
    rules.push_back(std::move(entry));
  }
  out["rules"] = std::move(rules);
  return out;
}

Json to_json(const MapSetResult& m) {
  Json out = Json::object();
  out["injective"] = m.injective;
  out["distinct"] = m.distinct_count;
  Json imgs = Json::array();
  for (const Element& g : m.images) imgs.push_back(to_json(g));
  out["images"] = std::move(imgs);
  Json pre = Json::array();
  for (std::size_t i : m.first_preimage) pre.push_back(i);
  out["first_preimage"] = std::move(pre);
  return out;
}

Json to_json(const ExtractionReport& r) {
  Json out = Json::object();
  out["component"] = r.free_marker ? Json("free") : json_int(r.prime);
  out["modulus"] = json_int(r.claimed_modulus);
  Json idx = Json::array();
  for (std::size_t i : r.kept_indices) idx.push_back(i);
  out["kept_indices"] = std::move(idx);
  out["subset"] = to_json(r.subset);
  out["certificate"] = to_json(r.certificate);
  Json tr = Json::array();
  for (const std::string& line : r.trace) tr.push_back(line);
  out["trace"] = std::move(tr);
  return out;
}

Json to_json(const CardinalityDiagnostic& d) {
  Json out = Json::object();
  out["set_size"] = d.set_size;
  out["image_size"] = d.image_size;
  out["equal"] = d.equal;
  out["extraction"] = to_json(d.extraction);
  return out;
}

Json to_json(const Prop35Decomposition& d) {
  Json out = Json::object();
  out["ok"] = d.ok;
  if (!d.ok) {
    out["certificate"] = to_json(d.failure);
    return out;
  }
  out["modulus"] = json_int(d.modulus);
  Json comps = Json::array();
  for (std::size_t i = 0; i < d.primes.size(); ++i) {
    Json c = Json::object();
    c["prime"] = json_int(d.primes[i]);
    c["exponent"] = d.exponents[i];
    c["group"] = to_json(d.component_specs[i]);
    Json coords = Json::array();
    for (std::size_t k : d.component_coords[i]) coords.push_back(k);
    c["coordinates"] = std::move(coords);
    Json elems = Json::array();
    for (const Element& g : d.components[i].elements) elems.push_back(to_json(g));
    c["elements"] = std::move(elems);
    c["certificate"] = to_json(d.component_certificates[i]);
    comps.push_back(std::move(c));
  }
  out["components"] = std::move(comps);
  Json res = Json::object();
  res["group"] = to_json(d.residual_spec);
  Json rcoords = Json::array();
  for (std::size_t k : d.residual_coords) rcoords.push_back(k);
  res["coordinates"] = std::move(rcoords);
  Json relems = Json::array();
  for (const Element& g : d.residuals) relems.push_back(to_json(g));
  res["elements"] = std::move(relems);
  out["residual"] = std::move(res);
  return out;
}

Json to_json(const DimensionBound& b) {
  Json out = Json::object();
  out["bound"] = b.bound;
  out["set_size"] = b.set_size;
  out["npr_holds"] = b.npr_holds;
  out["satisfied"] = b.satisfied;
  return out;
}

Json to_json(const ComposeResult& r) {
  Json out = Json::object();
  out["ok"] = r.ok;
  out["modulus"] = json_int(r.modulus);
  out["set"] = to_json(r.set);
  Json checks = Json::array();
  for (const ComposeCheck& c : r.checks) {
    Json entry = Json::object();
    entry["prime"] = json_int(c.prime);
    entry["injective"] = c.injective;
    entry["certificate"] = to_json(c.image_certificate);
    checks.push_back(std::move(entry));
  }
  out["checks"] = std::move(checks);
  if (!r.ok) out["failure"] = r.failure;
  return out;
}

Json to_json(const MaxIndependentResult& r) {
  Json out = Json::object();
  Json idx = Json::array();
  for (std::size_t i : r.indices) idx.push_back(i);
  out["indices"] = std::move(idx);
  out["subset"] = to_json(r.subset);
  return out;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace npr
