import sys
sys.path.insert(0, "src")
from fractions import Fraction as F
from crnf.exactfield import gauss, GR_ONE, GR_I, scalar_is_zero
from crnf.wseries import TruncatedSeries
from crnf.manifold import CRManifold, cubic_model
from crnf.biholo import Biholomorphism, HoloPoly, act_on_manifold
from crnf.normalizer import (classify, reductive_map, pnf_rows, branch1_rows,
                             _bucket, _get_system, _jets_at_level)

def perturb(trunc, adds):
    m = cubic_model(trunc)
    phi = list(m.phi)
    for alpha, terms in adds:
        phi[alpha - 1] = phi[alpha - 1] + TruncatedSeries(dict(terms), trunc)
    return CRManifold(tuple(phi), trunc)

def jet_map(trunc, entries):
    terms = {0: {(1, 0, 0, 0): GR_ONE}, 1: {(0, 1, 0, 0): GR_ONE},
             2: {(0, 0, 1, 0): GR_ONE}, 3: {(0, 0, 0, 1): GR_ONE}}
    for s, d in entries.items():
        terms[s].update(d)
    return Biholomorphism(HoloPoly(terms[0], trunc),
                          tuple(HoloPoly(terms[s], trunc) for s in (1, 2, 3)), trunc)

T = 6
seed = perturb(T, [(3, {(3, 1, 0, 0, 0): gauss(F(1, 6)), (1, 3, 0, 0, 0): gauss(F(1, 6))})])
rep0 = classify(seed)
mv = act_on_manifold(jet_map(T, {
    0: {(2, 0, 0, 0): gauss(F(1, 3), F(1, 2))},
    1: {(3, 0, 0, 0): gauss(F(1, 5)), (1, 1, 0, 0): gauss(0, F(1, 2))},
    2: {(1, 0, 1, 0): gauss(F(1, 7))},
    3: {(0, 0, 0, 2): gauss(F(1, 2), F(1, 3)), (4, 0, 0, 0): gauss(F(1, 4))},
}), seed)
rep1 = classify(mv)

for a in range(3):
    d0 = rep0.normal_form.phi[a].terms
    d1 = rep1.normal_form.phi[a].terms
    for mono in sorted(set(d0) | set(d1)):
        c0 = d0.get(mono)
        c1 = d1.get(mono)
        if c0 != c1:
            print(f"v{a+1} {mono}: {c0} vs {c1}")

print()
rows = pnf_rows(T) + branch1_rows(T, keep=True)
buckets = _bucket(rows)
for d in sorted(buckets):
    rs = buckets[d]
    sys_ = _get_system(T, d, rs)
    njets = len(_jets_at_level(d, T))
    # real dimension of jet space = 2*njets; rank = len(pivots)
    print(f"level {d}: rows={len(rs)} jets(cplx)={njets} rank={len(sys_.pivots)} kernel={2*njets - len(sys_.pivots)}")
