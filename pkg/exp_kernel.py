import sys
sys.path.insert(0, "src")
from fractions import Fraction as F
from crnf.exactfield import gauss, GR_ONE, GR_I, scalar_is_zero
from crnf.wseries import TruncatedSeries
from crnf.manifold import CRManifold, cubic_model, vid, extract_coefficient
from crnf.biholo import Biholomorphism, HoloPoly, act_on_manifold, identity_map
from crnf.normalizer import (classify, pnf_rows, branch1_rows, _bucket,
                             _get_system, _jets_at_level, _sweep, _verify_rows)

def perturb(trunc, adds):
    m = cubic_model(trunc)
    phi = list(m.phi)
    for alpha, terms in adds:
        phi[alpha - 1] = phi[alpha - 1] + TruncatedSeries(dict(terms), trunc)
    return CRManifold(tuple(phi), trunc)

T = 6
seed = perturb(T, [(3, {(3, 1, 0, 0, 0): gauss(F(1, 6)), (1, 3, 0, 0, 0): gauss(F(1, 6))})])
rep0 = classify(seed)
N0 = rep0.normal_form

rows = pnf_rows(T) + branch1_rows(T, keep=True)
buckets = _bucket(rows)
d = 4
sysd = _get_system(T, d, buckets[d])
jets = sysd.jets

# kernel via RREF: free columns
import itertools
# reconstruct matrix columns: rely on system internals
mat = [row[:] for row in sysd.rref]
piv = {c for (_r, c) in sysd.pivots}
ncols = sysd.ncols
free = [c for c in range(ncols) if c not in piv]
print("free cols at level 4:", free, "of", ncols)

# kernel vector per free col: x_free=1, pivots solved from rref
def kernel_vec(fc):
    x = [F(0)] * ncols
    x[fc] = F(1)
    # rref rows: for each pivot row, pivot col value = -sum of free parts
    for r, pc in sysd.pivots:
        x[pc] = -mat[r][fc]
    return x

for fc in free:
    kv = kernel_vec(fc)
    # build jet: columns pair (2j, 2j+1) = (re, im) parts of jet j
    terms = {}
    for j, (slot, mono) in enumerate(jets):
        c = gauss(kv[2 * j], kv[2 * j + 1])
        if not scalar_is_zero(c):
            terms[(slot, mono)] = c
    print(f"kernel dir from free col {fc}:", {k: str(v) for k, v in terms.items()})
    g = None
    tt = {0: {(1, 0, 0, 0): GR_ONE}, 1: {(0, 1, 0, 0): GR_ONE},
          2: {(0, 0, 1, 0): GR_ONE}, 3: {(0, 0, 0, 1): GR_ONE}}
    for (slot, mono), c in terms.items():
        tt[slot][mono] = c
    g = Biholomorphism(HoloPoly(tt[0], T), tuple(HoloPoly(tt[s], T) for s in (1, 2, 3)), T)
    m1 = act_on_manifold(g, N0)
    try:
        m1, _ = _sweep(m1, identity_map(T), buckets)
        _verify_rows(m1, rows)
        v51 = extract_coefficient(m1, vid(1, 5, 1, 0, 0, 0))
        print("  on-section after resweep; V1_Z5Zb =", v51)
        diffs = 0
        for a in range(3):
            for mono in sorted(set(m1.phi[a].terms) | set(N0.phi[a].terms)):
                c0 = N0.phi[a].terms.get(mono)
                c1 = m1.phi[a].terms.get(mono)
                if c0 != c1:
                    diffs += 1
                    if diffs < 8:
                        print(f"  moved v{a+1} {mono}: {c0} -> {c1}")
        print("  total moved slots:", diffs)
    except Exception as e:
        print("  resweep failed:", type(e).__name__, e)
