import sys, time
sys.path.insert(0, "src")
from fractions import Fraction as F

from crnf.exactfield import gauss
from crnf.wseries import TruncatedSeries
from crnf.manifold import CRManifold, cubic_model
from crnf.normalizer import classify


def perturb(trunc, adds):
    m = cubic_model(trunc)
    phi = list(m.phi)
    for alpha, terms in adds:
        phi[alpha - 1] = phi[alpha - 1] + TruncatedSeries(dict(terms), trunc)
    return CRManifold(tuple(phi), trunc)


SEEDS = [
    ("B1", perturb(6, [(3, {(3, 1, 0, 0, 0): gauss(F(1, 6)), (1, 3, 0, 0, 0): gauss(F(1, 6))})])),
    ("B2", perturb(6, [(3, {(2, 1, 1, 0, 0): gauss(F(1, 2)), (1, 2, 1, 0, 0): gauss(F(1, 2))})])),
    ("B3_1", perturb(6, [(3, {(2, 2, 1, 0, 0): gauss(F(1, 4))})])),
    ("B3_1B", perturb(6, [(1, {(3, 1, 1, 0, 0): gauss(F(1, 6)), (1, 3, 1, 0, 0): gauss(F(1, 6))})])),
    ("B3_1C", perturb(6, [(3, {(2, 2, 0, 1, 0): gauss(F(1, 4))})])),
    ("B3_3_1_a", perturb(7, [(1, {(3, 3, 0, 0, 0): gauss(F(1, 36)), (3, 3, 0, 1, 0): gauss(F(1, 36)), (3, 3, 0, 0, 1): gauss(F(1, 36))})])),
    ("B3_3_1_b", perturb(7, [(1, {(3, 3, 0, 0, 0): gauss(F(1, 36))})])),
    ("B3_3_2", perturb(6, [(1, {(2, 2, 0, 1, 1): gauss(F(1, 4)), (2, 2, 0, 0, 2): gauss(F(1, 8))})])),
    ("B3_3_3", cubic_model(6)),
]

for name, m in SEEDS:
    t0 = time.time()
    try:
        rep = classify(m)
        print(f"{name}: branch={rep.branch.tag} dim={rep.dim_aut} "
              f"iso={rep.residual_isotropy_dim}  {time.time()-t0:.1f}s", flush=True)
    except Exception as exc:
        print(f"{name}: {type(exc).__name__}: {exc}  {time.time()-t0:.1f}s", flush=True)
