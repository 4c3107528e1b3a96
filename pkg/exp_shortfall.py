import sys
sys.path.insert(0, "src")

from crnf.manifold import cubic_model
from crnf.normalizer import (
    pnf_rows, branch3_rows, _bucket, _get_system, _kernel_basis,
    _gauge_select, _jets_at_level, _GAUGE_EXCLUDE,
)

T = 7
rows = pnf_rows(T) + branch3_rows(T)
buckets = _bucket(rows)
d = 1
while True:
    jets = _jets_at_level(d, T)
    if not jets:
        break
    lev = buckets.get(d, [])
    sys_ = _get_system(T, d, lev)
    kern = _kernel_basis(sys_)
    if kern:
        sel_free = _gauge_select(T, d, lev, [])
        sel_excl = _gauge_select(T, d, lev, [], _GAUGE_EXCLUDE)
        note = ""
        if len(sel_excl) < len(kern):
            note = "  SHORTFALL with exclusion"
        if len(sel_free) < len(kern):
            note += "  (even unconstrained short)"
        print(f"defect {d}: kernel={len(kern)} free-pick={len(sel_free)} "
              f"excl-pick={len(sel_excl)}{note}")
        if len(sel_excl) < len(sel_free):
            free_set = {(c.label(), p) for c, p, _ in sel_free}
            excl_set = {(c.label(), p) for c, p, _ in sel_excl}
            print(f"   lost: {sorted(free_set - excl_set)}")
            print(f"   gained: {sorted(excl_set - free_set)}")
    d += 1
