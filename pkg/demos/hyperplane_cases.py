"""
Which offsets can carry decay information
=========================================

A matrix element between hyperplane projectors depends on the offsets
(tau, tau', tau'') either through a phase only, or non-trivially through the
combinations fixed by linear relations among the normals.
"""
from quanton_decay.minkowski import Velocity3, eta_from_velocity
from quanton_decay.relations import (
    classify_triple,
    classify_velocity_pair,
    format_record,
    velocity_pair_triple,
)


def etas(*vels):
    return [eta_from_velocity(Velocity3(*v)) for v in vels]


triples = {
    "all at rest": etas((0, 0, 0), (0, 0, 0), (0, 0, 0)),
    "collinear boosts": etas((0, 0, 0), (0.3, 0, 0), (0.6, 0, 0)),
    "independent boosts": etas((0, 0, 0), (0.6, 0, 0), (0, 0.6, 0)),
}
for name, triple in triples.items():
    rep = classify_triple(*triple)
    print(f"--- {name}")
    print(format_record({k: rep.to_dict()[k] for k in
                         ("case_id", "rank", "relations", "support_condition")}))

# Velocity eigenstates seen on the instantaneous hyperplanes t = const.
pairs = [((0, 0, 0), (0, 0, 0)), ((0.6, 0, 0), (0.6, 0, 0)),
         ((0.3, 0, 0), (0.6, 0, 0)), ((0.6, 0, 0), (0, 0.6, 0))]
for u, u_p in pairs:
    verdict = classify_velocity_pair(Velocity3(*u), Velocity3(*u_p))
    case = velocity_pair_triple(Velocity3(*u), Velocity3(*u_p)).case_id
    print(f"u={u} u'={u_p}: {verdict.category:<17} {case}  "
          f"time dependent: {verdict.time_dependent}")
