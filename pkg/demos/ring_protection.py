#!/usr/bin/env python3
"""Six buses on a ring: which ones need protection?

Walks through the small ring example by hand: a dominating set is not
enough, an attack slips through, and the minimum perfect protection set
sits strictly between the dominating and connected dominating optima.
"""
from rcds import (
    bnb_min_rcds,
    construct_stealth_attack,
    is_perfect_protection,
    is_rcds,
    min_connected_dominating_set,
    min_dominating_set,
    verify_attack,
)
from rcds.graph import cycle_graph, incident_edges, connected_components

ring = cycle_graph(6)
print("buses:", ring.vertices)
print("lines:", ring.sorted_edges())

# Guarding buses 1 and 4 covers every bus...
D = {1, 4}
print("\nprotect", sorted(D))
print("  lines touched:", sorted(incident_edges(ring, D)))
print("  pieces of (V, I_D(E)):", connected_components(ring, incident_edges(ring, D)))
print("  perfect?", is_perfect_protection(ring, D), "| relaxed CDS?", is_rcds(ring, D))

# ...but lines 2-3 and 5-6 touch no guard, so the ring falls into two
# halves and one half can be shifted against the other unseen.
attack = construct_stealth_attack(ring, D)
print("  attack phasors:", attack.phasors)
print("  nonzero flow perturbations:", {e: f for e, f in attack.flow.items() if f})
print("  passes every detector rule:", verify_attack(ring, D, attack))

# Three guards are enough if they are chained.
best = bnb_min_rcds(ring)
print("\nminimum perfect protection:", best.optimum)
print("  attack against it:", construct_stealth_attack(ring, best.optimum))

ds = min_dominating_set(ring)
cds = min_connected_dominating_set(ring)
print("\n|DS| = %d <= |RCDS| = %d <= |CDS| = %d" % (ds.cardinality, best.cardinality, cds.cardinality))
print("  DS  ", ds.optimum)
print("  CDS ", cds.optimum)
