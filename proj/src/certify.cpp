#include "npr/certify.hpp"

#include "npr/errors.hpp"

#include <sstream>

namespace npr {

namespace {

Int mod_reduce(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

/** Column vector of the coordinates of k*gamma in the ambient coordinates. */
std::vector<Int> scaled_coords(const GroupSpec& spec, const Element& gamma,
                               const Int& k) {
  std::vector<Int> v(spec.coord_count());
  for (std::size_t c = 0; c < v.size(); ++c) v[c] = k * gamma.coords[c];
  return v;
}

/**
 * Integer feasibility of B z = rhs given a precomputed SNF of B.
 * Solvable over Z iff (U rhs)_i is divisible by s_i on the diagonal part and
 * zero on the zero rows.
 */
bool solvable(const SnfResult& f, const std::vector<Int>& rhs) {
  const std::size_t nrows = f.s.rows();
  const std::size_t ncols = f.s.cols();
  for (std::size_t i = 0; i < nrows; ++i) {
    Int e = 0;
    for (std::size_t j = 0; j < nrows; ++j) e += f.u.at(i, j) * rhs[j];
    if (i < ncols && f.s.at(i, i) != 0) {
      if (e % f.s.at(i, i) != 0) return false;
    } else if (e != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace

Int npr_modulus(const ElementSet& e) {
  RelationLattice lat = relation_lattice(e);
  Int g = 0;
  for (std::size_t i = 0; i < lat.basis.rows(); ++i)
    for (std::size_t j = 0; j < lat.basis.cols(); ++j)
      g = gcd(g, lat.basis.at(i, j));
  return g;
}

NprCertificate is_npr(const ElementSet& e, const Int& n) {
  if (n < 1) fail(Error::Kind::Input, "modulus must be >= 1");
  NprCertificate cert;
  cert.modulus = n;
  RelationLattice lat = relation_lattice(e);
  for (std::size_t i = 0; i < lat.basis.rows(); ++i)
    for (std::size_t j = 0; j < lat.basis.cols(); ++j)
      if (lat.basis.at(i, j) % n != 0) {
        cert.holds = false;
        cert.relation.resize(lat.basis.cols());
        for (std::size_t c = 0; c < lat.basis.cols(); ++c)
          cert.relation[c] = lat.basis.at(i, c);
        cert.index = j;
        return cert;
      }
  cert.holds = true;
  return cert;
}

IndependenceCertificate is_independent(const ElementSet& e) {
  for (std::size_t j = 0; j < e.size(); ++j)
    if (is_identity(e.spec, e.elements[j]))
      fail(Error::Kind::Precondition,
           "independence is defined for non-trivial characters; position " +
               std::to_string(j) + " is the identity");
  std::vector<std::optional<Int>> orders(e.size());
  for (std::size_t j = 0; j < e.size(); ++j)
    orders[j] = order(e.spec, e.elements[j]);
  IndependenceCertificate cert;
  RelationLattice lat = relation_lattice(e);
  for (std::size_t i = 0; i < lat.basis.rows(); ++i)
    for (std::size_t j = 0; j < lat.basis.cols(); ++j) {
      const Int& b = lat.basis.at(i, j);
      bool kills = orders[j] ? (b % *orders[j] == 0) : (b == 0);
      if (!kills) {
        cert.holds = false;
        cert.relation.resize(lat.basis.cols());
        for (std::size_t c = 0; c < lat.basis.cols(); ++c)
          cert.relation[c] = lat.basis.at(i, c);
        cert.index = j;
        return cert;
      }
    }
  cert.holds = true;
  return cert;
}

ElementSet translate_set(const ElementSet& e, const Element& gamma) {
  const GroupSpec& spec = e.spec;
  if (gamma.coords.size() != spec.coord_count())
    fail(Error::Kind::Input, "element/spec mismatch in translate_set");
  Element g = canonicalize(spec, gamma.coords);
  IntMatrix b = embedding_matrix(e);
  std::optional<Int> o = order(spec, g);
  if (o) {
    SnfResult f = snf(b);
    for (Int k = 1; k < *o; ++k) {
      if (solvable(f, scaled_coords(spec, g, k))) {
        std::ostringstream msg;
        msg << "translate precondition violated: " << k
            << " * gamma lies in the subgroup generated by the set";
        fail(Error::Kind::Precondition, msg.str());
      }
    }
  } else {
    // Infinite order: k*gamma in <E> for some k != 0 iff the augmented system
    // [B | -gamma] has a kernel vector with nonzero last coordinate.
    IntMatrix aug(b.rows(), b.cols() + 1);
    for (std::size_t i = 0; i < b.rows(); ++i) {
      for (std::size_t j = 0; j < b.cols(); ++j) aug.at(i, j) = b.at(i, j);
      aug.at(i, b.cols()) = -g.coords[i];
    }
    IntMatrix kernel = integer_kernel(aug);
    Int d = 0;
    for (std::size_t i = 0; i < kernel.rows(); ++i)
      d = gcd(d, kernel.at(i, kernel.cols() - 1));
    if (d != 0) {
      std::ostringstream msg;
      msg << "translate precondition violated: " << abs(d)
          << " * gamma lies in the subgroup generated by the set";
      fail(Error::Kind::Precondition, msg.str());
    }
  }
  std::vector<Element> out;
  out.reserve(e.size());
  for (const Element& el : e.elements) out.push_back(add(spec, g, el));
  return make_element_set(spec, std::move(out));
}

InterpolationResult interpolate(const InterpolationProblem& p) {
  const GroupSpec& spec = p.set.spec;
  const std::size_t s = p.set.size();
  const std::size_t t = spec.torsion.size();
  const std::size_t dim = spec.rank + t;
  if (p.modulus < 1) fail(Error::Kind::Input, "modulus must be >= 1");
  if (p.targets.size() != s)
    fail(Error::Kind::Input, "target vector length does not match set size");
  for (const Int& c : p.targets)
    if (c < 0 || c >= p.modulus)
      fail(Error::Kind::Input, "targets must lie in [0, N)");

  // Unknown chi in (Q/Z)^{rank+t}: pairing rows ask <gamma_j, chi> = c_j/N,
  // annihilation rows ask m_i * chi_{rank+i} = 0 (mod 1).
  IntMatrix c(s + t, dim);
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t k = 0; k < dim; ++k)
      c.at(j, k) = p.set.elements[j].coords[k];
  for (std::size_t i = 0; i < t; ++i)
    c.at(s + i, spec.rank + i) = spec.torsion[i];
  std::vector<Rat> d(s + t, Rat(0));
  for (std::size_t j = 0; j < s; ++j) d[j] = Rat(p.targets[j], p.modulus);

  SnfResult f = snf(c);
  std::vector<Rat> psi(dim, Rat(0));
  InterpolationResult result;
  for (std::size_t i = 0; i < s + t; ++i) {
    Rat e = 0;
    for (std::size_t j = 0; j < s + t; ++j)
      if (f.u.at(i, j) != 0) e += Rat(f.u.at(i, j)) * d[j];
    if (i < dim && f.s.at(i, i) != 0) {
      psi[i] = e / Rat(f.s.at(i, i));
    } else if (denominator(e) != 1) {
      // Zero row with non-integer target: the row of U restricted to the
      // pairing block is a relation of E incompatible with the targets.
      result.feasible = false;
      result.infeasible_combination.resize(s);
      for (std::size_t j = 0; j < s; ++j)
        result.infeasible_combination[j] = f.u.at(i, j);
      return result;
    }
  }
  std::vector<Rat> chi(dim, Rat(0));
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t j = 0; j < dim; ++j)
      if (f.v.at(k, j) != 0) chi[k] += Rat(f.v.at(k, j)) * psi[j];
    chi[k] = frac_mod1(chi[k]);
  }
  std::vector<Rat> free(chi.begin(), chi.begin() + spec.rank);
  std::vector<Int> torsion(t);
  for (std::size_t i = 0; i < t; ++i) {
    Rat y = chi[spec.rank + i] * Rat(spec.torsion[i]);
    if (denominator(y) != 1)
      fail(Error::Kind::Input,
           "internal: torsion coordinate of witness is not integral");
    torsion[i] = mod_reduce(numerator(y), spec.torsion[i]);
  }
  result.feasible = true;
  result.witness = canonical_dual_point(spec, std::move(free), std::move(torsion));
  return result;
}

}  // namespace npr
