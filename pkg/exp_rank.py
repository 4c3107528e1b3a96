from fractions import Fraction as F
from crnf.exactfield import gauss
import crnf.normalizer as N
from crnf.manifold import vid
from exp_b1_staged import perturb

T = 6
base = N.pnf_rows(T) + N.branch1_rows(T, keep=True)[:2]
towers = N.branch1_rows(T, keep=False)
plain, dep = N._split_reachable(T, base, towers)
print("plain:", [(c.label(), p) for c, p, _ in plain])
print("dep:", [(c.label(), p) for c, p, _ in dep])
ext = base + plain
buckets = N._bucket(ext)
for d in (3, 4, 5, 6, 7):
    rows = buckets.get(d, [])
    s = N._get_system(T, d, rows)
    print(f"level {d}: rows={len(rows)} rank={len(s.pivots)} ncols={s.ncols} kernel={s.ncols - len(s.pivots)}")
