r"""
Periodic banded matrices from a linear combination of unitaries
===============================================================

A matrix with a cosine on the diagonal and constant wrapped off-diagonals is
a weighted sum of four unitaries: the cosine encoding, the two cyclic
shifts and the identity.  ``build_banded`` turns the weights into a PREP
circuit on a small data register and the unitaries into a SELECT block.

Run it with ``python3 demos/banded_lcu.py``.
"""

import math

import numpy as np

from pbe import BandedSpec, build_banded, build_shift, extract_block, unitary_of
from pbe.lcu import banded_dense

np.set_printoptions(precision=3, suppress=True)

######################################################################
# Equal weights on two qubits
# ---------------------------
# With every weight at ``1/4`` the PREP circuit is a Hadamard on each data
# qubit, and the block is a small matrix that can be checked by eye.

spec = BandedSpec(math.pi / 2, 0.0, (0.25, 0.25, 0.25, 0.25))
be = build_banded(2, spec)
print("encoded 4x4 block (alpha = 1):")
print(extract_block(be).real)

######################################################################
# The shifts on their own
# -----------------------
# The left shift maps ``|k>`` to ``|k + 1 mod N>``; the right shift undoes it.

L, R = unitary_of(build_shift(3, "left")), unitary_of(build_shift(3, "right"))
print("\nL R is the identity:", np.allclose(L @ R, np.eye(8)))
print("L |0> =", np.argmax(L[:, 0]), " R |0> =", np.argmax(R[:, 0]))

######################################################################
# Signs and sub-normalization
# ---------------------------
# Negative coefficients become a controlled sign flip inside SELECT.  The
# sub-normalization ``alpha`` is the sum of the absolute weights, and
# ``extract_block`` multiplies it back in.

spec = BandedSpec(0.8, 0.3, (0.5, 1.0, 1.0, 2.5), (1, -1, -1, 1))
be = build_banded(3, spec)
err = np.max(np.abs(extract_block(be) - banded_dense(3, spec)))
print(f"\nmixed-sign banded matrix on 3 qubits: alpha = {be.alpha}, error {err:.1e}")
