#include "npr/structure.hpp"

#include "npr/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace npr {

namespace {

Int mod_reduce(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

Int int_pow(const Int& base, unsigned e) {
  Int r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

void require_prime(const Int& p) {
  if (!is_prime(p)) {
    std::ostringstream msg;
    msg << p << " is not prime";
    fail(Error::Kind::Input, msg.str());
  }
}

void require_p_group(const GroupSpec& spec, const Int& p, const char* who) {
  if (!spec.is_p_group(p)) {
    std::ostringstream msg;
    msg << who << " requires a p-group spec for p = " << p << ", got "
        << to_string(spec);
    fail(Error::Kind::Precondition, msg.str());
  }
}

}  // namespace

Element QuotientMap::apply(const Element& e) const {
  Element cur = pre ? pre->forward(e) : e;
  const GroupSpec& mid = pre ? pre->target : source;
  if (cur.coords.size() != mid.coord_count() || rules.size() != mid.coord_count())
    fail(Error::Kind::Input, "element/spec mismatch in quotient apply");
  std::vector<Int> out;
  out.reserve(target.coord_count());
  for (std::size_t i = 0; i < rules.size(); ++i) {
    switch (rules[i].kind) {
      case CoordRule::Kind::Pass:
        out.push_back(cur.coords[i]);
        break;
      case CoordRule::Kind::Drop:
        break;
      case CoordRule::Kind::Mod:
        out.push_back(mod_reduce(cur.coords[i], rules[i].modulus));
        break;
    }
  }
  return canonicalize(target, std::move(out));
}

QuotientMap quotient_by_torsion(const GroupSpec& spec) {
  QuotientMap q;
  q.source = spec;
  q.target = GroupSpec{spec.rank, {}};
  q.rules.resize(spec.coord_count());
  for (std::size_t k = 0; k < spec.rank; ++k)
    q.rules[k] = CoordRule{CoordRule::Kind::Pass, 0};
  for (std::size_t i = 0; i < spec.torsion.size(); ++i)
    q.rules[spec.rank + i] = CoordRule{CoordRule::Kind::Drop, 0};
  q.kernel_description = "torsion subgroup";
  return q;
}

QuotientMap quotient_pn(const GroupSpec& spec, const Int& p, unsigned n) {
  require_prime(p);
  if (n < 1) fail(Error::Kind::Input, "quotient level n must be >= 1");
  QuotientMap q;
  q.source = spec;
  q.pre = primary_decompose(spec);
  const GroupSpec& mid = q.pre->target;
  q.target.rank = mid.rank;
  q.rules.resize(mid.coord_count());
  for (std::size_t k = 0; k < mid.rank; ++k)
    q.rules[k] = CoordRule{CoordRule::Kind::Pass, 0};
  for (std::size_t j = 0; j < q.pre->coords.size(); ++j) {
    const PrimaryCoord& pc = q.pre->coords[j];
    CoordRule rule{CoordRule::Kind::Drop, 0};
    if (pc.prime == p && pc.exponent >= n) {
      rule.kind = CoordRule::Kind::Mod;
      rule.modulus = int_pow(p, pc.exponent - n + 1);
      q.target.torsion.push_back(rule.modulus);
    }
    q.rules[mid.rank + j] = rule;
  }
  std::ostringstream desc;
  desc << "elements of finite order not divisible by " << p << "^" << n;
  q.kernel_description = desc.str();
  return q;
}

MapSetResult map_set(const QuotientMap& q, const ElementSet& e) {
  if (e.spec != q.source)
    fail(Error::Kind::Input, "set spec does not match quotient source");
  MapSetResult r;
  r.images.reserve(e.size());
  std::vector<Element> firsts;
  for (std::size_t i = 0; i < e.size(); ++i) {
    Element img = q.apply(e.elements[i]);
    bool seen = false;
    for (const Element& f : firsts)
      if (f == img) {
        seen = true;
        break;
      }
    if (!seen) {
      firsts.push_back(img);
      r.first_preimage.push_back(i);
    }
    r.images.push_back(std::move(img));
  }
  r.distinct_count = firsts.size();
  r.injective = (r.distinct_count == e.size());
  r.distinct_images = make_element_set(q.target, std::move(firsts));
  return r;
}

GroupSpec proj_coordinate_spec(const PrimaryDecomposition& dec, std::size_t i) {
  if (i >= dec.target.coord_count())
    fail(Error::Kind::Input, "coordinate index out of range");
  if (i < dec.target.rank) return GroupSpec{1, {}};
  return GroupSpec{0, {dec.target.torsion[i - dec.target.rank]}};
}

Element proj_coordinate(const PrimaryDecomposition& dec, const Element& gamma,
                        std::size_t i) {
  Element img = dec.forward(gamma);
  if (i >= img.coords.size())
    fail(Error::Kind::Input, "coordinate index out of range");
  return Element{{img.coords[i]}};
}

ElementSet power_map(const ElementSet& e, const Int& p, unsigned n) {
  require_prime(p);
  if (n < 1) fail(Error::Kind::Input, "power level n must be >= 1");
  require_p_group(e.spec, p, "power_map");
  const Int k = int_pow(p, n - 1);
  std::vector<Element> images;
  images.reserve(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    Element img = scale(e.spec, k, e.elements[i]);
    if (is_identity(e.spec, img))
      fail(Error::Kind::Precondition,
           "power map sends position " + std::to_string(i) +
               " to the identity, so the set was not " +
               int_pow(p, n).str() + "-PR");
    for (std::size_t j = 0; j < images.size(); ++j)
      if (images[j] == img)
        fail(Error::Kind::Precondition,
             "power map collides positions " + std::to_string(j) + " and " +
                 std::to_string(i) + ", so the set was not " +
                 int_pow(p, n).str() + "-PR");
    images.push_back(std::move(img));
  }
  return make_element_set(e.spec, std::move(images));
}

ElementSet root_map(const ElementSet& e, const Int& p, unsigned n) {
  require_prime(p);
  if (n < 1) fail(Error::Kind::Input, "root level n must be >= 1");
  require_p_group(e.spec, p, "root_map");
  const Int k = int_pow(p, n - 1);  // solve k * xi = gamma coordinatewise
  std::vector<Element> roots;
  roots.reserve(e.size());
  for (std::size_t idx = 0; idx < e.size(); ++idx) {
    const Element& gamma = e.elements[idx];
    std::vector<Int> xi(e.spec.torsion.size());
    for (std::size_t i = 0; i < e.spec.torsion.size(); ++i) {
      const Int& m = e.spec.torsion[i];
      Int g = gcd(k, m);
      if (gamma.coords[i] % g != 0) {
        std::ostringstream msg;
        msg << "no " << p << "^" << n - 1 << "-th root: coordinate " << i
            << " of position " << idx << " is not divisible by " << g;
        fail(Error::Kind::Divisibility, msg.str());
      }
      // Solutions form a residue class mod m/g; the smallest non-negative
      // representative per coordinate is the lexicographically least root.
      Int mg = m / g;
      Int kg = (k / g) % mg;
      Int target = (gamma.coords[i] / g) % mg;
      // Invert kg mod mg (coprime by construction).
      Int a = kg, b = mg, x0 = 1, x1 = 0;
      while (b != 0) {
        Int q = a / b;
        Int t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
      }
      xi[i] = mod_reduce(mod_reduce(x0, mg) * target, mg);
    }
    roots.push_back(canonicalize(e.spec, std::move(xi)));
  }
  return make_element_set(e.spec, std::move(roots));
}

Prop35Decomposition decompose_prop35(const ElementSet& e, const Int& n) {
  if (n < 2) fail(Error::Kind::Input, "modulus must be >= 2");
  for (std::size_t i = 0; i < e.size(); ++i)
    if (!order(e.spec, e.elements[i]))
      fail(Error::Kind::Precondition,
           "position " + std::to_string(i) + " has infinite order");
  Prop35Decomposition out;
  out.modulus = n;
  NprCertificate cert = is_npr(e, n);
  if (!cert.holds) {
    out.ok = false;
    out.failure = cert;
    return out;
  }
  out.ok = true;
  out.ambient = primary_decompose(e.spec);
  for (const auto& [p, exp] : factorize(n)) {
    out.primes.push_back(p);
    out.exponents.push_back(exp);
  }
  const std::size_t t0 = out.ambient.target.rank;
  // Partition the decomposed coordinates into the per-prime blocks and the
  // residual block (free coordinates and foreign primes).
  out.component_specs.resize(out.primes.size());
  out.component_coords.resize(out.primes.size());
  out.residual_spec.rank = out.ambient.target.rank;
  for (std::size_t k = 0; k < out.ambient.target.rank; ++k)
    out.residual_coords.push_back(k);
  for (std::size_t j = 0; j < out.ambient.coords.size(); ++j) {
    const PrimaryCoord& pc = out.ambient.coords[j];
    bool placed = false;
    for (std::size_t pi = 0; pi < out.primes.size(); ++pi)
      if (pc.prime == out.primes[pi]) {
        out.component_specs[pi].torsion.push_back(pc.modulus);
        out.component_coords[pi].push_back(t0 + j);
        placed = true;
        break;
      }
    if (!placed) {
      out.residual_spec.torsion.push_back(pc.modulus);
      out.residual_coords.push_back(t0 + j);
    }
  }
  std::vector<std::vector<Element>> comp_elems(out.primes.size());
  for (const Element& gamma : e.elements) {
    Element dec = out.ambient.forward(gamma);
    for (std::size_t pi = 0; pi < out.primes.size(); ++pi) {
      std::vector<Int> coords;
      coords.reserve(out.component_coords[pi].size());
      for (std::size_t c : out.component_coords[pi])
        coords.push_back(dec.coords[c]);
      comp_elems[pi].push_back(Element{std::move(coords)});
    }
    std::vector<Int> res;
    res.reserve(out.residual_coords.size());
    for (std::size_t c : out.residual_coords) res.push_back(dec.coords[c]);
    out.residuals.push_back(Element{std::move(res)});
  }
  for (std::size_t pi = 0; pi < out.primes.size(); ++pi) {
    // Distinctness of each component list is a consequence of E being N-PR.
    out.components.push_back(
        make_element_set(out.component_specs[pi], std::move(comp_elems[pi])));
    Int pn = int_pow(out.primes[pi], out.exponents[pi]);
    NprCertificate c = is_npr(out.components[pi], pn);
    out.component_certificates.push_back(std::move(c));
  }
  return out;
}

DimensionBound dimension_bound(const ElementSet& e, const Int& p) {
  require_prime(p);
  PrimaryDecomposition dec = primary_decompose(e.spec);
  for (std::size_t i = 0; i < e.size(); ++i) {
    Element img = dec.forward(e.elements[i]);
    for (std::size_t j = 0; j < dec.coords.size(); ++j)
      if (dec.coords[j].prime != p &&
          img.coords[dec.target.rank + j] != 0) {
        std::ostringstream msg;
        msg << "position " << i << " has a nontrivial component at prime "
            << dec.coords[j].prime << "; the bound applies to sets supported "
            << "on the free and " << p << "-primary coordinates";
        fail(Error::Kind::Precondition, msg.str());
      }
  }
  DimensionBound out;
  out.set_size = e.size();
  out.bound = e.spec.rank;
  for (const PrimaryCoord& pc : dec.coords)
    if (pc.prime == p) ++out.bound;
  out.npr_holds = is_npr(e, p).holds;
  out.satisfied = !out.npr_holds || out.set_size <= out.bound;
  return out;
}

}  // namespace npr
