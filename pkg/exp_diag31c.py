import sys
sys.path.insert(0, "src")
from fractions import Fraction as F

from crnf.exactfield import gauss
from crnf.wseries import TruncatedSeries
from crnf.manifold import CRManifold, cubic_model, vid
from crnf.biholo import act_on_manifold, identity_map
from crnf.normalizer import (
    reductive_map, pnf_rows, branch3_rows, _sweep, _bucket, _level_of,
)


def perturb(trunc, adds):
    m = cubic_model(trunc)
    phi = list(m.phi)
    for alpha, terms in adds:
        phi[alpha - 1] = phi[alpha - 1] + TruncatedSeries(dict(terms), trunc)
    return CRManifold(tuple(phi), trunc)


T = 6
seed = perturb(T, [(3, {(2, 2, 0, 1, 0): gauss(F(1, 4))})])
rows = pnf_rows(T) + branch3_rows(T)
buckets = _bucket(rows)
model = cubic_model(T)

for name, m in [
    ("base", seed),
    ("rot", act_on_manifold(reductive_map(gauss(F(3, 5), F(4, 5)), T), seed)),
]:
    ms, _ = _sweep(m, identity_map(T), buckets)
    print(f"--- {name} post-sweep deviations:")
    for a in range(3):
        d = ms.phi[a] - model.phi[a]
        for mono in sorted(d.terms):
            cid = vid(a + 1, *mono)
            print(f"  V{a+1}_{mono} level={_level_of(cid)}: {d.terms[mono]}")
