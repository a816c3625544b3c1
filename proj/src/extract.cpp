#include "npr/extract.hpp"

#include "npr/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace npr {

namespace {

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

ElementSet subset_of(const ElementSet& e, const std::vector<std::size_t>& idx) {
  std::vector<Element> elems;
  elems.reserve(idx.size());
  for (std::size_t i : idx) elems.push_back(e.elements[i]);
  return make_element_set(e.spec, std::move(elems));
}

std::string join_indices(const std::vector<std::size_t>& idx) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < idx.size(); ++i)
    out << (i ? "," : "") << idx[i];
  out << "}";
  return out.str();
}

/**
 * Greedy staircase pass over order-p vectors: keep an item when it is
 * nontrivial at some coordinate where nothing kept so far is nontrivial.
 * Returns kept positions into `items`.
 */
std::vector<std::size_t> staircase_greedy(const GroupSpec& spec,
                                          const std::vector<Element>& items,
                                          std::vector<std::string>* trace) {
  std::vector<bool> used(spec.coord_count(), false);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::size_t fresh = spec.coord_count();
    for (std::size_t b = 0; b < spec.coord_count(); ++b)
      if (!used[b] && items[i].coords[b] != 0) {
        fresh = b;
        break;
      }
    if (fresh == spec.coord_count()) {
      if (trace)
        trace->push_back("staircase: drop item " + std::to_string(i) +
                         " (no fresh coordinate)");
      continue;
    }
    for (std::size_t b = 0; b < spec.coord_count(); ++b)
      if (items[i].coords[b] != 0) used[b] = true;
    kept.push_back(i);
    if (trace)
      trace->push_back("staircase: keep item " + std::to_string(i) +
                       " (fresh coordinate " + std::to_string(fresh) + ")");
  }
  return kept;
}

/** p-adic valuation of a p-power (order of an element in a p-group). */
unsigned p_valuation(Int o, const Int& p) {
  unsigned k = 0;
  while (o % p == 0) {
    o /= p;
    ++k;
  }
  return k;
}

/**
 * Certified greedy augmentation: extend `kept` (ascending input indices) by
 * the remaining elements in input order whenever the union still certifies
 * n-PR. The finite-scale stand-in for the maximality step of the underlying
 * argument.
 */
void augment_certified(const ElementSet& e, const Int& n,
                       std::vector<std::size_t>& kept,
                       std::vector<std::string>& trace) {
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (std::find(kept.begin(), kept.end(), i) != kept.end()) continue;
    std::vector<std::size_t> trial = kept;
    trial.insert(std::upper_bound(trial.begin(), trial.end(), i), i);
    if (is_npr(subset_of(e, trial), n).holds) {
      kept = std::move(trial);
      trace.push_back("augment: added index " + std::to_string(i));
    } else {
      trace.push_back("augment: rejected index " + std::to_string(i));
    }
  }
}

ExtractionReport finish_report(const ElementSet& e, const Int& prime,
                               const Int& claimed,
                               std::vector<std::size_t> kept,
                               std::vector<std::string> trace) {
  ExtractionReport r;
  r.free_marker = false;
  r.prime = prime;
  r.claimed_modulus = claimed;
  std::sort(kept.begin(), kept.end());
  r.subset = subset_of(e, kept);
  r.kept_indices = std::move(kept);
  r.certificate = is_npr(r.subset, claimed);
  if (!r.certificate.holds)
    throw std::logic_error("internal: extracted subset failed certification");
  trace.push_back("certified " + claimed.str() + "-PR subset " +
                  join_indices(r.kept_indices));
  r.trace = std::move(trace);
  return r;
}

}  // namespace

ExtractionReport staircase_extract(const ElementSet& e, const Int& p,
                                   bool exhaustive) {
  require_prime(p);
  if (!e.spec.is_p_group(p))
    fail(Error::Kind::Precondition,
         "staircase_extract requires a p-group spec for p = " + p.str());
  for (std::size_t i = 0; i < e.size(); ++i) {
    std::optional<Int> o = order(e.spec, e.elements[i]);
    if (!o || *o != p)
      fail(Error::Kind::Precondition,
           "staircase_extract requires every element to have order exactly " +
               p.str() + "; position " + std::to_string(i) + " violates this");
  }
  std::vector<std::string> trace;
  std::vector<std::size_t> kept;
  if (!exhaustive) {
    kept = staircase_greedy(e.spec, e.elements, &trace);
  } else {
    if (e.size() > 10)
      fail(Error::Kind::Precondition,
           "exhaustive staircase ordering search is limited to 10 elements");
    std::vector<std::size_t> perm(e.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::vector<std::size_t> best;
    do {
      std::vector<Element> items;
      items.reserve(perm.size());
      for (std::size_t i : perm) items.push_back(e.elements[i]);
      std::vector<std::size_t> pos = staircase_greedy(e.spec, items, nullptr);
      std::vector<std::size_t> cand;
      cand.reserve(pos.size());
      for (std::size_t i : pos) cand.push_back(perm[i]);
      std::sort(cand.begin(), cand.end());
      if (cand.size() > best.size() ||
          (cand.size() == best.size() && cand < best))
        best = std::move(cand);
    } while (std::next_permutation(perm.begin(), perm.end()));
    trace.push_back("exhaustive ordering search over " +
                    std::to_string(e.size()) + " elements");
    kept = std::move(best);
  }
  ExtractionReport r = finish_report(e, p, p, std::move(kept), std::move(trace));
  IndependenceCertificate ind = is_independent(r.subset);
  if (!ind.holds)
    throw std::logic_error("internal: staircase subset failed independence");
  r.trace.push_back("staircase subset certified independent");
  return r;
}

ExtractionReport extract_ppr(const ElementSet& e, const Int& p) {
  require_prime(p);
  if (!e.spec.is_p_group(p))
    fail(Error::Kind::Precondition,
         "extract_ppr requires a p-group spec for p = " + p.str());
  std::vector<std::string> trace;
  std::map<unsigned, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < e.size(); ++i)
    classes[p_valuation(*order(e.spec, e.elements[i]), p)].push_back(i);
  {
    std::ostringstream line;
    line << "order classes:";
    for (const auto& [k, idx] : classes)
      line << " p^" << k << ":" << idx.size();
    trace.push_back(line.str());
  }
  unsigned big_k = 0;
  std::size_t big_size = 0;
  for (const auto& [k, idx] : classes)
    if (k >= 1 && idx.size() > big_size) {
      big_k = k;
      big_size = idx.size();
    }
  std::vector<std::size_t> kept;
  if (big_size == 0) {
    trace.push_back("no elements of order > 1; starting from the empty set");
  } else {
    const std::vector<std::size_t>& ek = classes[big_k];
    trace.push_back("selected class K=" + std::to_string(big_k) + " with " +
                    std::to_string(ek.size()) + " elements");
    if (big_k == 1) {
      std::vector<Element> items;
      for (std::size_t i : ek) items.push_back(e.elements[i]);
      for (std::size_t pos : staircase_greedy(e.spec, items, &trace))
        kept.push_back(ek[pos]);
    } else {
      ElementSet eks = subset_of(e, ek);
      unsigned n0 = 1;
      for (unsigned n = big_k; n >= 1; --n) {
        QuotientMap q = quotient_pn(e.spec, p, n);
        if (map_set(q, eks).injective) {
          n0 = n;
          break;
        }
      }
      trace.push_back("injectivity horizon n0=" + std::to_string(n0));
      QuotientMap q0 = quotient_pn(e.spec, p, n0);
      MapSetResult ms0 = map_set(q0, eks);
      if (n0 == big_k) {
        // The quotient reduces every order-p^K element to order p; the
        // staircase applies to the images directly.
        std::vector<std::size_t> pos =
            staircase_greedy(q0.target, ms0.images, &trace);
        for (std::size_t i : pos) kept.push_back(ek[i]);
      } else {
        // Coordinates that still carry order >= p^{n0+1} values get
        // discarded; what remains of the images has order p or 1.
        const Int high = int_pow(p, n0 + 1);
        std::vector<bool> b1(e.spec.torsion.size(), false);
        for (std::size_t i : ek)
          for (std::size_t b = 0; b < e.spec.torsion.size(); ++b) {
            const Int& m = e.spec.torsion[b];
            const Int& c = e.elements[i].coords[b];
            Int o = m / gcd(c == 0 ? m : c, m);
            if (o >= high) b1[b] = true;
          }
        // q0 keeps exactly the source coordinates with exponent >= n0,
        // in order; recover that correspondence to apply the discard.
        std::vector<std::size_t> kept_src;
        for (std::size_t b = 0; b < e.spec.torsion.size(); ++b)
          if (q0.rules[b].kind == CoordRule::Kind::Mod) kept_src.push_back(b);
        std::vector<std::size_t> proj_coords;  // target coords to keep
        GroupSpec proj_spec;
        for (std::size_t tcoord = 0; tcoord < kept_src.size(); ++tcoord)
          if (!b1[kept_src[tcoord]]) {
            proj_coords.push_back(tcoord);
            proj_spec.torsion.push_back(q0.target.torsion[tcoord]);
          }
        {
          std::ostringstream line;
          line << "high-order coordinates discarded:";
          std::size_t cnt = 0;
          for (std::size_t b = 0; b < b1.size(); ++b)
            if (b1[b]) {
              line << " " << b;
              ++cnt;
            }
          if (cnt == 0) line << " none";
          trace.push_back(line.str());
        }
        std::vector<Element> proj;
        std::vector<std::size_t> owner;
        for (std::size_t i = 0; i < ek.size(); ++i) {
          std::vector<Int> coords;
          coords.reserve(proj_coords.size());
          for (std::size_t c : proj_coords)
            coords.push_back(ms0.images[i].coords[c]);
          Element v{std::move(coords)};
          if (is_identity(proj_spec, v)) {
            trace.push_back("projection drops index " +
                            std::to_string(ek[i]) + " (trivial image)");
            continue;
          }
          bool dup = false;
          for (const Element& w : proj)
            if (w == v) {
              dup = true;
              break;
            }
          if (dup) {
            trace.push_back("projection drops index " +
                            std::to_string(ek[i]) + " (duplicate image)");
            continue;
          }
          proj.push_back(std::move(v));
          owner.push_back(i);
        }
        for (std::size_t pos : staircase_greedy(proj_spec, proj, &trace))
          kept.push_back(ek[owner[pos]]);
      }
    }
  }
  std::sort(kept.begin(), kept.end());
  trace.push_back("pipeline subset " + join_indices(kept));
  augment_certified(e, p, kept, trace);
  return finish_report(e, p, p, std::move(kept), std::move(trace));
}

namespace {

/** Projection onto the q-primary coordinates (free part and other primes dropped). */
QuotientMap primary_projection(const GroupSpec& spec,
                               const PrimaryDecomposition& dec, const Int& q) {
  QuotientMap qm;
  qm.source = spec;
  qm.pre = dec;
  qm.rules.resize(dec.target.coord_count());
  for (std::size_t k = 0; k < dec.target.rank; ++k)
    qm.rules[k] = CoordRule{CoordRule::Kind::Drop, 0};
  for (std::size_t j = 0; j < dec.coords.size(); ++j) {
    if (dec.coords[j].prime == q) {
      qm.rules[dec.target.rank + j] =
          CoordRule{CoordRule::Kind::Mod, dec.coords[j].modulus};
      qm.target.torsion.push_back(dec.coords[j].modulus);
    } else {
      qm.rules[dec.target.rank + j] = CoordRule{CoordRule::Kind::Drop, 0};
    }
  }
  qm.kernel_description = "complement of the " + q.str() + "-primary part";
  return qm;
}

}  // namespace

ExtractionReport extract_any(const ElementSet& e) {
  std::vector<std::string> trace;
  if (e.size() == 0) {
    ExtractionReport r;
    r.free_marker = true;
    r.claimed_modulus = 0;
    r.subset = ElementSet{e.spec, {}};
    r.certificate = NprCertificate{true, 0, {}, 0};
    r.trace = {"empty input"};
    return r;
  }
  PrimaryDecomposition dec = primary_decompose(e.spec);
  struct Candidate {
    bool free_part;
    Int prime;
    QuotientMap q;
    MapSetResult ms;
  };
  std::vector<Candidate> cands;
  for (const Int& q : dec.primes()) {
    Candidate c{false, q, primary_projection(e.spec, dec, q), {}};
    c.ms = map_set(c.q, e);
    trace.push_back("prime " + q.str() + ": image size " +
                    std::to_string(c.ms.distinct_count));
    cands.push_back(std::move(c));
  }
  if (e.spec.rank > 0) {
    Candidate c{true, 0, quotient_by_torsion(e.spec), {}};
    c.ms = map_set(c.q, e);
    trace.push_back("free part: image size " +
                    std::to_string(c.ms.distinct_count));
    cands.push_back(std::move(c));
  }
  if (cands.empty()) {
    ExtractionReport r;
    r.free_marker = true;
    r.claimed_modulus = 0;
    trace.push_back("no usable component (trivial spec)");
    r.subset = ElementSet{e.spec, {}};
    r.certificate = NprCertificate{true, 0, {}, 0};
    r.trace = std::move(trace);
    return r;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i)
    if (cands[i].ms.distinct_count > cands[best].ms.distinct_count) best = i;
  const Candidate& ch = cands[best];
  if (ch.free_part) {
    trace.push_back("selected free part");
    // Greedy Q-rank selection over the torsion-free images.
    std::vector<std::size_t> kept;
    std::size_t cur_rank = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      IntMatrix trial(kept.size() + 1, e.spec.rank);
      for (std::size_t r = 0; r < kept.size(); ++r)
        for (std::size_t c = 0; c < e.spec.rank; ++c)
          trial.at(r, c) = e.elements[kept[r]].coords[c];
      for (std::size_t c = 0; c < e.spec.rank; ++c)
        trial.at(kept.size(), c) = e.elements[i].coords[c];
      if (rank(trial) > cur_rank) {
        kept.push_back(i);
        ++cur_rank;
        trace.push_back("free: keep index " + std::to_string(i) +
                        " (rank " + std::to_string(cur_rank) + ")");
      } else {
        trace.push_back("free: drop index " + std::to_string(i));
      }
    }
    ExtractionReport r;
    r.free_marker = true;
    r.claimed_modulus = 0;
    r.kept_indices = kept;
    r.subset = subset_of(e, kept);
    if (npr_modulus(r.subset) != 0)
      throw std::logic_error("internal: free extraction not relation-free");
    if (!r.subset.elements.empty() && !is_independent(r.subset).holds)
      throw std::logic_error("internal: free extraction not independent");
    r.certificate = NprCertificate{true, 0, {}, 0};
    trace.push_back("subset " + join_indices(kept) +
                    " certified independent (N-PR for every N)");
    r.trace = std::move(trace);
    return r;
  }
  trace.push_back("selected prime " + ch.prime.str());
  ExtractionReport inner = extract_ppr(ch.ms.distinct_images, ch.prime);
  for (const std::string& line : inner.trace) trace.push_back("  " + line);
  std::vector<std::size_t> kept;
  for (std::size_t pos : inner.kept_indices)
    kept.push_back(ch.ms.first_preimage[pos]);
  return finish_report(e, ch.prime, ch.prime, std::move(kept),
                       std::move(trace));
}

CardinalityDiagnostic cardinality_diagnostic(const ElementSet& e, const Int& p,
                                             unsigned n) {
  require_prime(p);
  if (n < 1) fail(Error::Kind::Input, "level n must be >= 1");
  CardinalityDiagnostic d;
  d.set_size = e.size();
  QuotientMap q = quotient_pn(e.spec, p, n);
  MapSetResult ms = map_set(q, e);
  d.image_size = ms.distinct_count;
  d.equal = (d.image_size == d.set_size);
  std::vector<std::string> trace;
  trace.push_back("image size " + std::to_string(d.image_size) + " of " +
                  std::to_string(d.set_size) +
                  (d.equal ? " (full-size subset not excluded)"
                           : " (no full-size subset exists)"));
  std::vector<std::size_t> kept;
  if (ms.distinct_images.spec.rank == 0) {
    ExtractionReport inner = extract_ppr(ms.distinct_images, p);
    for (const std::string& line : inner.trace) trace.push_back("  " + line);
    for (std::size_t pos : inner.kept_indices)
      kept.push_back(ms.first_preimage[pos]);
    std::sort(kept.begin(), kept.end());
  } else {
    // Free coordinates survive the quotient; the p-group pipeline does not
    // apply, so the certified greedy pass below does all the selection.
    trace.push_back("image has free coordinates; certified greedy only");
  }
  const Int pn = int_pow(p, n);
  augment_certified(e, pn, kept, trace);
  d.extraction =
      finish_report(e, p, pn, std::move(kept), std::move(trace));
  return d;
}

ComposeResult compose_npr(const std::vector<ComposeComponent>& components,
                          const std::vector<std::vector<std::size_t>>& pairings) {
  if (components.empty())
    fail(Error::Kind::Input, "compose_npr needs at least one component");
  const GroupSpec& spec = components[0].set.spec;
  const std::size_t u = components[0].set.size();
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].set.spec != spec)
      fail(Error::Kind::Input, "all components must share one ambient spec");
    if (components[i].set.size() != u)
      fail(Error::Kind::Input, "component size mismatch");
    require_prime(components[i].prime);
    if (components[i].exponent < 1)
      fail(Error::Kind::Input, "component exponent must be >= 1");
    for (std::size_t j = 0; j < i; ++j)
      if (components[j].prime == components[i].prime)
        fail(Error::Kind::Input, "components must use pairwise distinct primes");
    for (std::size_t k = 0; k < u; ++k) {
      std::optional<Int> o = order(spec, components[i].set.elements[k]);
      bool ok = o.has_value();
      if (ok) {
        Int r = *o;
        while (r % components[i].prime == 0) r /= components[i].prime;
        ok = (r == 1);
      }
      if (!ok)
        fail(Error::Kind::Input,
             "component " + std::to_string(i) + " position " +
                 std::to_string(k) + " is not supported in the " +
                 components[i].prime.str() + "-primary part");
    }
  }
  if (!pairings.empty() && pairings.size() != components.size())
    fail(Error::Kind::Input, "pairings must match the component count");
  std::vector<std::vector<std::size_t>> sigma(components.size());
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (pairings.empty() || pairings[i].empty()) {
      sigma[i].resize(u);
      for (std::size_t j = 0; j < u; ++j) sigma[i][j] = j;
    } else {
      sigma[i] = pairings[i];
      if (sigma[i].size() != u)
        fail(Error::Kind::Input, "pairing length mismatch");
      std::vector<bool> seen(u, false);
      for (std::size_t v : sigma[i]) {
        if (v >= u || seen[v])
          fail(Error::Kind::Input, "pairing is not a bijection");
        seen[v] = true;
      }
    }
  }

  ComposeResult result;
  result.modulus = 1;
  for (const ComposeComponent& c : components)
    result.modulus *= int_pow(c.prime, c.exponent);

  // Precondition: each component's quotient image certifies p-PR.
  for (const ComposeComponent& c : components) {
    QuotientMap q = quotient_pn(spec, c.prime, c.exponent);
    MapSetResult ms = map_set(q, c.set);
    NprCertificate cert = is_npr(ms.distinct_images, c.prime);
    if (!ms.injective || !cert.holds) {
      result.ok = false;
      result.checks.push_back(ComposeCheck{c.prime, ms.injective, cert});
      result.failure = "component at prime " + c.prime.str() +
                       (ms.injective ? " fails the p-PR certificate"
                                     : " is not mapped injectively");
      return result;
    }
  }

  std::vector<Element> sums;
  sums.reserve(u);
  for (std::size_t j = 0; j < u; ++j) {
    Element acc = identity_element(spec);
    for (std::size_t i = 0; i < components.size(); ++i)
      acc = add(spec, acc, components[i].set.elements[sigma[i][j]]);
    sums.push_back(std::move(acc));
  }
  result.set = make_element_set(spec, std::move(sums));

  // Certification of the composed set: injective quotient with p-PR image at
  // every participating prime.
  result.ok = true;
  for (const ComposeComponent& c : components) {
    QuotientMap q = quotient_pn(spec, c.prime, c.exponent);
    MapSetResult ms = map_set(q, result.set);
    NprCertificate cert = is_npr(ms.distinct_images, c.prime);
    result.checks.push_back(ComposeCheck{c.prime, ms.injective, cert});
    if (!ms.injective || !cert.holds) {
      result.ok = false;
      result.failure = "composed set fails certification at prime " +
                       c.prime.str();
    }
  }
  return result;
}

MaxIndependentResult max_independent_subset(const ElementSet& e) {
  if (e.size() > 20)
    fail(Error::Kind::Precondition,
         "exhaustive independence search is limited to 20 elements");
  std::vector<std::size_t> cands;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (!is_identity(e.spec, e.elements[i])) cands.push_back(i);
  std::vector<std::size_t> best, cur;
  auto dfs = [&](auto&& self, std::size_t pos) -> void {
    if (cur.size() > best.size()) best = cur;
    if (pos == cands.size()) return;
    if (cur.size() + (cands.size() - pos) <= best.size()) return;
    cur.push_back(cands[pos]);
    if (is_independent(subset_of(e, cur)).holds) self(self, pos + 1);
    cur.pop_back();
    self(self, pos + 1);
  };
  dfs(dfs, 0);
  MaxIndependentResult r;
  r.indices = best;
  r.subset = subset_of(e, best);
  return r;
}

}  // namespace npr
