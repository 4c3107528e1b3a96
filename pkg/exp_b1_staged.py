import sys, time
sys.path.insert(0, "src")
from fractions import Fraction as F
from crnf.exactfield import gauss, GR_ONE, GR_I
from crnf.wseries import TruncatedSeries
from crnf.manifold import CRManifold, cubic_model
from crnf.biholo import Biholomorphism, HoloPoly, act_on_manifold, compose, identity_map
from crnf.normalizer import classify, reductive_map


def perturb(trunc, adds):
    m = cubic_model(trunc)
    phi = list(m.phi)
    for alpha, terms in adds:
        phi[alpha - 1] = phi[alpha - 1] + TruncatedSeries(dict(terms), trunc)
    return CRManifold(tuple(phi), trunc)


def jet_map(trunc, entries):
    terms = {0: {(1, 0, 0, 0): GR_ONE}, 1: {(0, 1, 0, 0): GR_ONE},
             2: {(0, 0, 1, 0): GR_ONE}, 3: {(0, 0, 0, 1): GR_ONE}}
    for s, d in entries.items():
        terms[s].update(d)
    return Biholomorphism(HoloPoly(terms[0], trunc),
                          tuple(HoloPoly(terms[s], trunc) for s in (1, 2, 3)), trunc)


T = 6
seed = perturb(T, [(3, {(3, 1, 0, 0, 0): gauss(F(1, 6)), (1, 3, 0, 0, 0): gauss(F(1, 6))})])

t0 = time.time()
rep0 = classify(seed)
print("base:", rep0.branch.tag, "%.1fs" % (time.time() - t0))

variants = {
    "rot": act_on_manifold(reductive_map(gauss(F(3, 5), F(4, 5)), T), seed),
    "dil": act_on_manifold(reductive_map(gauss(F(2)), T), seed),
    "rotdil": act_on_manifold(reductive_map(gauss(F(6, 5), F(8, 5)), T), seed),
    "jets": act_on_manifold(jet_map(T, {
        0: {(2, 0, 0, 0): gauss(F(1, 3), F(1, 2))},
        1: {(3, 0, 0, 0): gauss(F(1, 5)), (1, 1, 0, 0): gauss(0, F(1, 2))},
        2: {(1, 0, 1, 0): gauss(F(1, 7))},
        3: {(0, 0, 0, 2): gauss(F(1, 2), F(1, 3)), (4, 0, 0, 0): gauss(F(1, 4))},
    }), seed),
}
variants["mix"] = act_on_manifold(
    compose(reductive_map(gauss(F(3, 5), F(-4, 5)), T),
            jet_map(T, {0: {(0, 0, 1, 0): gauss(0, F(1, 2))},
                        3: {(2, 0, 1, 0): gauss(F(1, 3))}})),
    seed)

base_json = rep0.normal_form.to_json()
for name, mv in variants.items():
    t0 = time.time()
    try:
        rep = classify(mv)
        same = rep.normal_form.to_json() == base_json
        print(f"{name}: {rep.branch.tag} same={same} %.1fs" % (time.time() - t0))
        if not same:
            for a in range(3):
                d0 = dict(base_json[("v1", "v2", "v3")[a]] if isinstance(base_json, dict) else [])
            print("  MISMATCH")
    except Exception as e:
        print(f"{name}: FAIL {type(e).__name__}: {e} %.1fs" % (time.time() - t0))
