"""Calibrate the rotation action on the level-4 pair (caseB, caseC)."""
from fractions import Fraction as F

from crnf.exactfield import GaussRational, gauss
from crnf.manifold import CRManifold, cubic_model, extract_coefficient
from crnf.wseries import TruncatedSeries
from crnf.biholo import act_on_manifold, identity_map
from crnf.normalizer import (
    partial_normalize, reductive_map, pnf_rows, branch3_rows,
    _finish, _GAUGE_EXCLUDE, _SLOT_CASEB, _SLOT_CASEC,
)

T = 6
I = gauss(0, 1)


def perturb(trunc, adds):
    base = cubic_model(trunc)
    phi = list(base.phi)
    for alpha, terms in adds:
        phi[alpha - 1] = phi[alpha - 1] + TruncatedSeries(dict(terms), trunc)
    return CRManifold(tuple(phi), trunc)


def gauged(m):
    pm, _ = partial_normalize(m)
    rows = pnf_rows(T) + branch3_rows(T)
    m3, _, _ = _finish(pm, identity_map(T), rows, [], [], _GAUGE_EXCLUDE)
    return m3


def probe(seed, om):
    g = reductive_map(om, T)
    mm = act_on_manifold(g, seed)
    m3 = gauged(mm)
    vb = extract_coefficient(m3, _SLOT_CASEB)
    vc = extract_coefficient(m3, _SLOT_CASEC)
    return vb, vc


caseC_seed = perturb(T, [(3, {(2, 2, 0, 1, 0): gauss(F(1, 4))})])
caseB_seed = perturb(T, [(1, {(3, 1, 1, 0, 0): gauss(F(1, 6)),
                              (1, 3, 1, 0, 0): gauss(F(1, 6))})])

for om in (gauss(1), gauss(F(3, 5), F(4, 5)), gauss(F(5, 13), F(12, 13)),
           gauss(F(-3, 5), F(4, 5))):
    vb, vc = probe(caseC_seed, om)
    om2 = om * om
    pred = -I / gauss(2) * (om2 - gauss(1)) * vc
    print(f"caseC seed om={om}: caseB'={vb} caseC'={vc} "
          f"pred={pred} match={vb == pred}")

for om in (gauss(1), gauss(F(3, 5), F(4, 5)), gauss(F(5, 13), F(12, 13))):
    vb, vc = probe(caseB_seed, om)
    pred = om * om * gauss(1)
    print(f"caseB seed om={om}: caseB'={vb} caseC'={vc} "
          f"pred={pred} match={vb == pred}")
