#include "npr/group.hpp"

#include "npr/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace npr {

namespace {

Int mod_reduce(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

std::string strip(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

Int parse_unsigned(const std::string& digits, const std::string& what) {
  if (digits.empty()) fail(Error::Kind::Parse, what + ": missing number");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      fail(Error::Kind::Parse, what + ": invalid number '" + digits + "'");
  return Int(digits);
}

}  // namespace

std::optional<Int> GroupSpec::total_order() const {
  if (rank > 0) return std::nullopt;
  Int n = 1;
  for (const Int& m : torsion) n *= m;
  return n;
}

bool GroupSpec::is_p_group(const Int& p) const {
  if (rank != 0) return false;
  for (const Int& m : torsion) {
    Int r = m;
    while (r % p == 0) r /= p;
    if (r != 1) return false;
  }
  return true;
}

GroupSpec parse_group_spec(const std::string& text) {
  std::string body = strip(text);
  if (body.empty()) fail(Error::Kind::Parse, "empty group string");
  GroupSpec spec;
  bool saw_rank = false;
  std::size_t pos = 0;
  std::size_t part_index = 0;
  while (pos <= body.size()) {
    std::size_t star = body.find('*', pos);
    std::string tok = strip(body.substr(
        pos, star == std::string::npos ? std::string::npos : star - pos));
    if (tok.empty()) fail(Error::Kind::Parse, "empty factor in group string");
    if (tok.rfind("Z^", 0) == 0) {
      if (saw_rank || part_index != 0)
        fail(Error::Kind::Parse,
             "free part must appear once, at the front: '" + tok + "'");
      Int k = parse_unsigned(strip(tok.substr(2)), "free rank");
      if (k > 1000000) fail(Error::Kind::Parse, "free rank too large");
      spec.rank = static_cast<std::size_t>(k);
      saw_rank = true;
    } else if (tok.rfind("Z/", 0) == 0) {
      Int m = parse_unsigned(strip(tok.substr(2)), "torsion order");
      if (m < 2)
        fail(Error::Kind::Parse, "torsion order must be >= 2, got " + tok);
      spec.torsion.push_back(m);
    } else if (tok == "Z") {
      if (saw_rank || part_index != 0)
        fail(Error::Kind::Parse,
             "free part must appear once, at the front: '" + tok + "'");
      spec.rank = 1;
      saw_rank = true;
    } else {
      fail(Error::Kind::Parse, "unrecognized factor '" + tok + "'");
    }
    if (star == std::string::npos) break;
    pos = star + 1;
    ++part_index;
  }
  return spec;
}

std::string to_string(const GroupSpec& spec) {
  std::ostringstream out;
  bool first = true;
  if (spec.rank > 0 || spec.torsion.empty()) {
    out << "Z^" << spec.rank;
    first = false;
  }
  for (const Int& m : spec.torsion) {
    if (!first) out << " * ";
    out << "Z/" << m;
    first = false;
  }
  return out.str();
}

Element canonicalize(const GroupSpec& spec, std::vector<Int> raw) {
  if (raw.size() != spec.coord_count())
    fail(Error::Kind::Input, "element has " + std::to_string(raw.size()) +
                                 " coordinates, spec needs " +
                                 std::to_string(spec.coord_count()));
  for (std::size_t i = 0; i < spec.torsion.size(); ++i) {
    Int& c = raw[spec.rank + i];
    c = mod_reduce(c, spec.torsion[i]);
  }
  return Element{std::move(raw)};
}

bool is_canonical(const GroupSpec& spec, const Element& e) {
  if (e.coords.size() != spec.coord_count()) return false;
  for (std::size_t i = 0; i < spec.torsion.size(); ++i) {
    const Int& c = e.coords[spec.rank + i];
    if (c < 0 || c >= spec.torsion[i]) return false;
  }
  return true;
}

bool is_identity(const GroupSpec& spec, const Element& e) {
  (void)spec;
  return std::all_of(e.coords.begin(), e.coords.end(),
                     [](const Int& c) { return c == 0; });
}

Element identity_element(const GroupSpec& spec) {
  return Element{std::vector<Int>(spec.coord_count())};
}

Element add(const GroupSpec& spec, const Element& a, const Element& b) {
  if (a.coords.size() != spec.coord_count() ||
      b.coords.size() != spec.coord_count())
    fail(Error::Kind::Input, "element/spec mismatch in add");
  std::vector<Int> out(spec.coord_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coords[i] + b.coords[i];
  return canonicalize(spec, std::move(out));
}

Element negate(const GroupSpec& spec, const Element& a) {
  std::vector<Int> out(a.coords.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -a.coords[i];
  return canonicalize(spec, std::move(out));
}

Element scale(const GroupSpec& spec, const Int& k, const Element& a) {
  std::vector<Int> out(a.coords.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = k * a.coords[i];
  return canonicalize(spec, std::move(out));
}

std::optional<Int> order(const GroupSpec& spec, const Element& e) {
  if (e.coords.size() != spec.coord_count())
    fail(Error::Kind::Input, "element/spec mismatch in order");
  for (std::size_t k = 0; k < spec.rank; ++k)
    if (e.coords[k] != 0) return std::nullopt;
  Int o = 1;
  for (std::size_t i = 0; i < spec.torsion.size(); ++i) {
    const Int& m = spec.torsion[i];
    Int c = mod_reduce(e.coords[spec.rank + i], m);
    Int oi = m / gcd(c == 0 ? m : c, m);
    o = lcm(o, oi);
  }
  return o;
}

ElementSet make_element_set(const GroupSpec& spec,
                            std::vector<std::vector<Int>> raw) {
  std::vector<Element> elems;
  elems.reserve(raw.size());
  for (auto& coords : raw) elems.push_back(canonicalize(spec, std::move(coords)));
  return make_element_set(spec, std::move(elems));
}

ElementSet make_element_set(const GroupSpec& spec, std::vector<Element> elems) {
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (!is_canonical(spec, elems[i]))
      elems[i] = canonicalize(spec, std::move(elems[i].coords));
    for (std::size_t j = 0; j < i; ++j)
      if (elems[i] == elems[j])
        fail(Error::Kind::Input, "duplicate element at positions " +
                                     std::to_string(j) + " and " +
                                     std::to_string(i));
  }
  return ElementSet{spec, std::move(elems)};
}

UnitRational::UnitRational(const Rat& q) : value(frac_mod1(q)) {}

Rat frac_mod1(const Rat& q) {
  Int fl = floor_div(numerator(q), denominator(q));
  return q - Rat(fl);
}

Rat circular_distance(const UnitRational& a, const UnitRational& b) {
  Rat d = frac_mod1(a.value - b.value);  // in [0, 1)
  if (2 * d > 1) d = 1 - d;
  return d;
}

double chord_length(const Rat& d) {
  return 2.0 * std::sin(3.14159265358979323846 * d.convert_to<double>());
}

DualPoint canonical_dual_point(const GroupSpec& spec, std::vector<Rat> free,
                               std::vector<Int> torsion) {
  if (free.size() != spec.rank || torsion.size() != spec.torsion.size())
    fail(Error::Kind::Input, "dual point shape does not match spec");
  for (Rat& q : free) q = frac_mod1(q);
  for (std::size_t i = 0; i < torsion.size(); ++i)
    torsion[i] = mod_reduce(torsion[i], spec.torsion[i]);
  return DualPoint{std::move(free), std::move(torsion)};
}

UnitRational eval_pair(const GroupSpec& spec, const Element& gamma,
                       const DualPoint& x) {
  if (gamma.coords.size() != spec.coord_count())
    fail(Error::Kind::Input, "element/spec mismatch in eval_pair");
  if (x.free_coords.size() != spec.rank ||
      x.torsion_coords.size() != spec.torsion.size())
    fail(Error::Kind::Input, "dual point/spec mismatch in eval_pair");
  Rat q = 0;
  for (std::size_t k = 0; k < spec.rank; ++k)
    q += Rat(gamma.coords[k]) * x.free_coords[k];
  for (std::size_t i = 0; i < spec.torsion.size(); ++i)
    q += Rat(gamma.coords[spec.rank + i] * x.torsion_coords[i],
             spec.torsion[i]);
  return UnitRational(q);
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (Int d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<Int, unsigned>> factorize(const Int& m) {
  if (m < 1) fail(Error::Kind::Input, "factorize expects a positive integer");
  std::vector<std::pair<Int, unsigned>> out;
  Int r = m;
  auto take = [&](const Int& p) {
    unsigned e = 0;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  };
  take(2);
  for (Int d = 3; d * d <= r; d += 2) take(d);
  if (r > 1) out.emplace_back(r, 1);
  return out;
}

Element PrimaryDecomposition::forward(const Element& e) const {
  if (e.coords.size() != source.coord_count())
    fail(Error::Kind::Input, "element/spec mismatch in primary forward map");
  std::vector<Int> out(target.coord_count());
  for (std::size_t k = 0; k < source.rank; ++k) out[k] = e.coords[k];
  for (std::size_t j = 0; j < coords.size(); ++j) {
    const PrimaryCoord& pc = coords[j];
    out[target.rank + j] =
        mod_reduce(e.coords[source.rank + pc.source], pc.modulus);
  }
  return Element{std::move(out)};
}

Element PrimaryDecomposition::inverse(const Element& e) const {
  if (e.coords.size() != target.coord_count())
    fail(Error::Kind::Input, "element/spec mismatch in primary inverse map");
  std::vector<Int> out(source.coord_count());
  for (std::size_t k = 0; k < source.rank; ++k) out[k] = e.coords[k];
  for (std::size_t j = 0; j < coords.size(); ++j) {
    const PrimaryCoord& pc = coords[j];
    std::size_t i = source.rank + pc.source;
    out[i] += e.coords[target.rank + j] * pc.crt_coeff;
  }
  return canonicalize(source, std::move(out));
}

std::vector<Int> PrimaryDecomposition::primes() const {
  std::vector<Int> ps;
  for (const PrimaryCoord& pc : coords)
    if (ps.empty() || ps.back() != pc.prime) ps.push_back(pc.prime);
  return ps;
}

PrimaryDecomposition primary_decompose(const GroupSpec& spec) {
  PrimaryDecomposition dec;
  dec.source = spec;
  dec.target.rank = spec.rank;
  // (prime, source index) pairs sorted by prime then source order.
  std::map<Int, std::vector<PrimaryCoord>> blocks;
  for (std::size_t i = 0; i < spec.torsion.size(); ++i) {
    const Int& m = spec.torsion[i];
    auto factors = factorize(m);
    for (const auto& [p, e] : factors) {
      Int pe = 1;
      for (unsigned k = 0; k < e; ++k) pe *= p;
      PrimaryCoord pc;
      pc.source = i;
      pc.prime = p;
      pc.exponent = e;
      pc.modulus = pe;
      // CRT coefficient: c = (m/pe) * ((m/pe)^{-1} mod pe), so that
      // x = sum a_j * c_j reconstructs x mod m from residues a_j.
      Int rest = m / pe;
      Int inv = 0;
      // Extended gcd of rest and pe; rest is invertible mod pe.
      {
        Int a = rest % pe, b = pe, x0 = 1, x1 = 0;
        while (b != 0) {
          Int q = a / b;
          Int t = a - q * b;
          a = b;
          b = t;
          t = x0 - q * x1;
          x0 = x1;
          x1 = t;
        }
        inv = mod_reduce(x0, pe);
      }
      pc.crt_coeff = mod_reduce(rest * inv, m);
      blocks[p].push_back(std::move(pc));
    }
  }
  for (auto& [p, pcs] : blocks)
    for (auto& pc : pcs) {
      dec.target.torsion.push_back(pc.modulus);
      dec.coords.push_back(std::move(pc));
    }
  return dec;
}

}  // namespace npr
