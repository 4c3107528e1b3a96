from fractions import Fraction as F
from crnf.exactfield import gauss
from crnf.biholo import act_on_manifold, compose, invert
from crnf.normalizer import classify, reductive_map
from exp_b1_staged import perturb

base = perturb(6, [(3, {(3,1,0,0,0): gauss(F(1,6)), (1,3,0,0,0): gauss(F(1,6))})])
rep0 = classify(base)
rot = reductive_map(gauss(F(3,5), F(4,5)), 6)
rep1 = classify(act_on_manifold(rot, base))
g = compose(rep1.transformation, compose(rot, invert(rep0.transformation)))
print("maps nf0 to nf1:", act_on_manifold(g, rep0.normal_form) == rep1.normal_form)
names = ["Z", "W1", "W2", "W3"]
W = (1, 2, 3, 3)
ident = {0: (1,0,0,0), 1: (0,1,0,0), 2: (0,0,1,0), 3: (0,0,0,1)}
bydef = {}
for i, p in enumerate(g.components()):
    for mono, c in p.terms.items():
        if mono == ident[i]:
            c = c - gauss(1)
            if c == gauss(0):
                continue
        w = sum(e * wt for e, wt in zip(mono, (1,2,3,3)))
        d = w - W[i]
        bydef.setdefault(d, []).append((names[i], mono, c))
for d in sorted(bydef)[:3]:
    print(f"--- defect {d} ({len(bydef[d])} terms)")
    for nm, mono, c in sorted(bydef[d])[:12]:
        print(f"  {nm} {mono}: {c}")
