import sys
sys.path.insert(0, "src")
from fractions import Fraction as F

from crnf.exactfield import gauss
from crnf.wseries import TruncatedSeries
from crnf.manifold import CRManifold, cubic_model, vid
from crnf.biholo import act_on_manifold, identity_map
from crnf.normalizer import (
    pnf_rows, branch3_rows, _sweep, _bucket, _level_of, _finish,
    _SLOT_X6, _SLOT_Y6, _part_value,
)


def perturb(trunc, adds):
    m = cubic_model(trunc)
    phi = list(m.phi)
    for alpha, terms in adds:
        phi[alpha - 1] = phi[alpha - 1] + TruncatedSeries(dict(terms), trunc)
    return CRManifold(tuple(phi), trunc)


T = 6
seed = perturb(T, [(1, {(2, 2, 0, 1, 1): gauss(F(1, 4)), (2, 2, 0, 0, 2): gauss(F(1, 8))})])
rows = pnf_rows(T) + branch3_rows(T)
model = cubic_model(T)

ms, _ = _sweep(seed, identity_map(T), _bucket(rows))
print("post-sweep x,y:", _part_value(ms, _SLOT_X6, "re"), _part_value(ms, _SLOT_Y6, "re"))

mg, Tg, allrows = _finish(seed, identity_map(T), rows, [], [])
print("post-gauge x,y:", _part_value(mg, _SLOT_X6, "re"), _part_value(mg, _SLOT_Y6, "re"))
print("gauge rows added:")
for cid, part, tgt in allrows[len(rows):]:
    print(f"  {cid.label()} {part} -> {tgt}  (level {_level_of(cid)})")
print("deviations post-gauge:")
for a in range(3):
    d = mg.phi[a] - model.phi[a]
    for mono in sorted(d.terms):
        cid = vid(a + 1, *mono)
        print(f"  V{a+1}_{mono} level={_level_of(cid)}: {d.terms[mono]}")
