from fractions import Fraction as F
from crnf.exactfield import gauss
from crnf.manifold import cubic_model
from crnf.biholo import act_on_manifold
from crnf.normalizer import reductive_map
from crnf.normalizer import classify
from exp_b1_staged import perturb

base = perturb(6, [(3, {(3,1,0,0,0): gauss(F(1,6)), (1,3,0,0,0): gauss(F(1,6))})])
rep0 = classify(base)
rot = reductive_map(gauss(F(3,5), F(4,5)), 6)
rep1 = classify(act_on_manifold(rot, base))
for a in range(3):
    t0 = rep0.normal_form.phi[a].terms
    t1 = rep1.normal_form.phi[a].terms
    for k in sorted(set(t0) | set(t1)):
        v0 = t0.get(k)
        v1 = t1.get(k)
        if (v0 is None) != (v1 is None) or (v0 is not None and not (v0 == v1)):
            print(f"v{a+1} {k}: base={v0} rot={v1}")
