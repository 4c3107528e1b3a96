from fractions import Fraction as F
from crnf.exactfield import gauss
from crnf.biholo import act_on_manifold, compose, invert
from crnf.normalizer import classify, reductive_map
from exp_b1_staged import perturb

base = perturb(6, [(3, {(3,1,0,0,0): gauss(F(1,6)), (1,3,0,0,0): gauss(F(1,6))})])
rep0 = classify(base)
rot = reductive_map(gauss(F(3,5), F(4,5)), 6)
rep1 = classify(act_on_manifold(rot, base))
# connecting map: nf0 -> nf1
g = compose(rep1.transformation, compose(rot, invert(rep0.transformation)))
chk = act_on_manifold(g, rep0.normal_form)
print("maps nf0 to nf1:", chk == rep1.normal_form)
comps = g.components() if callable(getattr(g, "components", None)) else None
names = ["Z", "W1", "W2", "W3"]
ident = {0: (1,0,0,0), 1: (0,1,0,0), 2: (0,0,1,0), 3: (0,0,0,1)}
for i, p in enumerate([g.z_image] if hasattr(g, "z_image") else []):
    pass
# introspect structure
for i, p in enumerate(comps or []):
    for mono, c in sorted(p.terms.items()):
        if mono == ident[i] and c == gauss(1):
            continue
        print(f"{names[i]} {mono}: {c}")
