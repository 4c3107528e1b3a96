import sys, time
sys.path.insert(0, "src")
from fractions import Fraction as F

from crnf.exactfield import gauss, GR_ONE
from crnf.wseries import TruncatedSeries
from crnf.manifold import CRManifold, cubic_model
from crnf.biholo import Biholomorphism, HoloPoly, act_on_manifold, compose
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


SEEDS = {
    "B1": perturb(6, [(3, {(3, 1, 0, 0, 0): gauss(F(1, 6)), (1, 3, 0, 0, 0): gauss(F(1, 6))})]),
    "B2": perturb(6, [(3, {(2, 1, 1, 0, 0): gauss(F(1, 2)), (1, 2, 1, 0, 0): gauss(F(1, 2))})]),
    "B3_1": perturb(6, [(3, {(2, 2, 1, 0, 0): gauss(F(1, 4))})]),
    "B3_1B": perturb(6, [(1, {(3, 1, 1, 0, 0): gauss(F(1, 6)), (1, 3, 1, 0, 0): gauss(F(1, 6))})]),
    "B3_1C": perturb(6, [(3, {(2, 2, 0, 1, 0): gauss(F(1, 4))})]),
    "B3_3_1_a": perturb(7, [(1, {(3, 3, 0, 0, 0): gauss(F(1, 36)), (3, 3, 0, 1, 0): gauss(F(1, 36)), (3, 3, 0, 0, 1): gauss(F(1, 36))})]),
    "B3_3_1_b": perturb(7, [(1, {(3, 3, 0, 0, 0): gauss(F(1, 36))})]),
    "B3_3_2": perturb(6, [(1, {(2, 2, 0, 1, 1): gauss(F(1, 4)), (2, 2, 0, 0, 2): gauss(F(1, 8))})]),
    "B3_3_3": cubic_model(6),
    "B3_3_2_7": perturb(7, [(1, {(2, 2, 0, 1, 1): gauss(F(1, 4)), (2, 2, 0, 0, 2): gauss(F(1, 8))})]),
    "B3_3_3_7": cubic_model(7),
}


def variants(seed, T):
    out = {
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
    out["mix"] = act_on_manifold(
        compose(reductive_map(gauss(F(3, 5), F(-4, 5)), T),
                jet_map(T, {0: {(0, 0, 1, 0): gauss(0, F(1, 2))},
                            3: {(2, 0, 1, 0): gauss(F(1, 3))}})),
        seed)
    return out


names = sys.argv[1:] or list(SEEDS)
for name in names:
    seed = SEEDS[name]
    T = seed.trunc
    t0 = time.time()
    rep0 = classify(seed)
    base_json = rep0.normal_form.to_json()
    print(f"{name} base: {rep0.branch.tag} {time.time()-t0:.1f}s", flush=True)
    for vn, mv in variants(seed, T).items():
        t0 = time.time()
        try:
            rep = classify(mv)
            same = rep.normal_form.to_json() == base_json
            mark = "ok " if same else "DIFF"
            print(f"  {name} {vn}: {rep.branch.tag} {mark} {time.time()-t0:.1f}s", flush=True)
            if not same:
                m0, m1 = rep0.normal_form, rep.normal_form
                for a in range(3):
                    d = m1.phi[a] - m0.phi[a]
                    if not d.is_zero():
                        ms = sorted(d.terms)[:4]
                        print(f"    comp {a+1}: {[(mm, str(d.terms[mm])) for mm in ms]}", flush=True)
        except Exception as exc:
            print(f"  {name} {vn}: {type(exc).__name__}: {exc} {time.time()-t0:.1f}s", flush=True)
