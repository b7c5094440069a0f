#!/usr/bin/env python3
# One-step containment under a matrix polytope, and the nonnegative
# multiplier matrices that certify it.

import numpy as np

from tubesynth import PolytopicModel, box, check_containment

# Uncertain autonomous system: the state matrix lies anywhere in the
# hull of two scalings.  No control channel in this demo.
model = PolytopicModel(
    vertices=[(0.5 * np.eye(2), np.zeros((2, 1))),
              (0.7 * np.eye(2), np.zeros((2, 1)))],
    C=np.zeros((1, 2)))
F = np.zeros((1, 1))

src = box([-1, -1], [1, 1])
tgt = box([-0.75, -0.75], [0.75, 0.75])

report = check_containment(model, F, src, tgt)
print("image of the unit box inside the 0.75 box:", report.contained)
print("worst violation:", report.worst_violation)

# The certificate for each vertex matrix is a nonnegative G with
#   G A_src = A_tgt A_cl   and   G b_src <= b_tgt.
# Anyone can recheck the claim by plain matrix arithmetic:
for i, G in enumerate(report.certificates):
    A_cl = model.vertices[i][0]
    eq = np.max(np.abs(G @ src.A - tgt.A @ A_cl))
    bound = np.max(G @ src.b - tgt.b)
    print("vertex %d: min entry %.1e, equality residual %.1e, slack %.3f"
          % (i, G.min(), eq, -bound))

# Growing the uncertainty until the image pokes out flips the verdict,
# and the violation measures how far.
model2 = PolytopicModel(
    vertices=[(0.5 * np.eye(2), np.zeros((2, 1))),
              (0.9 * np.eye(2), np.zeros((2, 1)))],
    C=np.zeros((1, 2)))
report2 = check_containment(model2, F, src, tgt)
print("\nwith a 0.9 scaling vertex:", report2.contained,
      "(violation %.3f = 0.9 - 0.75)" % report2.worst_violation)
