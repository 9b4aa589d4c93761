# Sparse high-girth blow-ups of a directed triangle, and what survives the
# trip down the projection.

import numpy as np

from ordpat import RelStructure, Signature, TemporalStructure, generate, girth, transfer, tsil_parameters
from ordpat.relcore import compose_witness
from ordpat.tsil import equivalence_trial, verify_spanning

sig = Signature((("R", 2),))
tri = RelStructure(sig, 3, {"R": [(0, 1), (1, 2), (2, 0)]})

params = tsil_parameters(tri, 4, n=64, seed=0)
print("formula n:", params.n_symbolic, " delta_max:", round(params.delta_max, 4))

kept = []
for seed in range(20):
    inst = generate(tri, tsil_parameters(tri, 4, n=64, seed=seed))
    kept.append((inst.sampled, inst.blown.tuple_count, girth(inst.blown)))
kept = np.array([(a, b, g or 0) for a, b, g in kept])
print("sampled / kept tuples (mean):", kept[:, :2].mean(axis=0), " min girth:", kept[:, 2].min())

# allow ties and strict increase along an arc
t = TemporalStructure(sig, {"R": {(1, 1), (1, 2)}})
w = compose_witness((1, 1, 1), inst.projection)
print("spanning at delta_max:", verify_spanning(inst, w, params.delta_max) is None)
print("transferred:", transfer(inst, t, w))

rep = equivalence_trial(tri, t, 3, 16, range(5), budget=2000)
print(rep.summary)
