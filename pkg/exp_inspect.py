import os
from fractions import Fraction as F
from crnf.exactfield import gauss
from crnf.biholo import act_on_manifold, compose, invert
import crnf.normalizer as N
from exp_b1_staged import perturb

# wrap internals with prints
orig_cts = N._cross_tower_solve
def cts(m, T, base_rows, tower_rows, notes):
    m, T, achieved, reserved = orig_cts(m, T, base_rows, tower_rows, notes)
    for d, vecs in sorted(reserved.items()):
        print(f"  reserved at defect {d}: {len(vecs)} vecs")
    return m, T, achieved, reserved
N._cross_tower_solve = cts

orig_sel = N._gauge_select
def sel(trunc, d, rows, reserved):
    out = orig_sel(trunc, d, rows, reserved)
    sys_ = N._get_system(trunc, d, rows)
    ker = N._kernel_basis(sys_)
    if ker:
        print(f"  gauge level {d}: kernel={len(ker)} reserved_rank={N._rank_of(list(reserved))} picked={[(c.label(), p) for c, p, _ in out]}")
    return out
N._gauge_select = sel

orig_td = N._tower_directions
def td(m, buckets, level, rows, base_vals):
    dirs, cols = orig_td(m, buckets, level, rows, base_vals)
    print(f"  tower level {level}: rows={[c.label()+':'+p for c,p,_ in rows]} dirs={[(s, mo, 'i' if not N.scalar_is_zero(u-N.GR_ONE) else '1', d) for s,mo,u,d in dirs]}")
    return dirs, cols
N._tower_directions = td

base = perturb(6, [(3, {(3,1,0,0,0): gauss(F(1,6)), (1,3,0,0,0): gauss(F(1,6))})])
print("=== base run")
rep0 = N.classify(base)
