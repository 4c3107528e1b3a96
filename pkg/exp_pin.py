from fractions import Fraction as F
from crnf.exactfield import gauss
from crnf.biholo import act_on_manifold, compose, invert
import crnf.normalizer as N
from crnf.manifold import vid
from exp_b1_staged import perturb

base = perturb(6, [(3, {(3,1,0,0,0): gauss(F(1,6)), (1,3,0,0,0): gauss(F(1,6))})])
rep0 = N.classify(base)
rot = N.reductive_map(gauss(F(3,5), F(4,5)), 6)
rep1 = N.classify(act_on_manifold(rot, base))
g = compose(rep1.transformation, compose(rot, invert(rep0.transformation)))

T = 6
jets5 = N._jets_at_level(5, T)
v5 = [F(0)] * (2 * len(jets5))
W = (1, 2, 3, 3)
for i, p in enumerate(g.components()):
    for mono, c in p.terms.items():
        w = sum(e * wt for e, wt in zip(mono, (1, 2, 3, 3)))
        if w - W[i] != 5:
            continue
        slot = i
        if (slot, mono) in jets5:
            j = jets5.index((slot, mono))
            v5[2 * j] = c.re
            v5[2 * j + 1] = c.im
        else:
            print("defect-5 term outside jet list:", i, mono, c)

base_rows = N.pnf_rows(T) + N.branch1_rows(T, keep=True)[:2]
buckets = N._bucket(base_rows)
rows5 = buckets.get(5, [])
# kernel membership: action on rows5
act = []
for cid, part, _ in rows5:
    arow = N._slot_action_row(T, jets5, cid, part)
    act.append(sum(a * b for a, b in zip(arow, v5)))
print("v5 nonzero coords:", sum(1 for x in v5 if x))
print("action on level-5 base rows all zero:", all(x == 0 for x in act))
for cid, part in [(vid(1, 4, 1, 1, 0, 0), "re"), (vid(1, 4, 1, 1, 0, 0), "im")]:
    arow = N._slot_action_row(T, jets5, cid, part)
    print(f"gauge {cid.label()}:{part} action:", sum(a * b for a, b in zip(arow, v5)))
# tower probe of v5 on the final nf0
towrow = [(vid(1, 4, 1, 0, 1, 0), "re", F(0))]
tv = [N._as_fraction_or_raise(N._part_value(rep0.normal_form, towrow[0][0], "re"), "t")]
gj = N._jet_biholo(jets5, v5, T)
col = N._probe_rows(rep0.normal_form, buckets, gj, towrow, tv)
print("tower V1_Z4ZbU2:re response:", col)
# values of the two nfs at the gauge slots and tower
for nm, rep in (("nf0", rep0), ("nf1", rep1)):
    vals = []
    for cid, part in [(vid(1,4,1,1,0,0),"re"),(vid(1,4,1,1,0,0),"im"),(vid(1,4,1,0,1,0),"re")]:
        vals.append(str(N._part_value(rep.normal_form, cid, part)))
    print(nm, "V1_Z4ZbU1 re,im / V1_Z4ZbU2 re:", vals)
