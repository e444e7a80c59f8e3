"""Frozen reference values checked by the verification suites.

Published six-decimal minimizer tables for the threshold kernel (q = 1)
and the cusp kernel (q = 1/2), the critical exponents of the interior /
endpoint-split branch crossing, checkpoint energies for the k = 11 branch
comparison, and the closed-form node sets the small-q checks compare
against.  Values are stored exactly as published; the suites assert the
library reproduces them within the documented tolerances.
"""

import numpy as np

__all__ = [
    "MINIMIZERS_Q1",
    "MINIMIZERS_Q_HALF",
    "EVEN_CRITICAL_EXPONENTS",
    "ODD_CRITICAL_EXPONENT",
    "BRANCH_CHECKPOINTS_K11",
    "LOBATTO_5",
    "LOG_NODES_4",
]

# Minimizers at q = 1 for k = 1..10 (six-decimal positions).  From k = 5 on
# the configurations carry coincident endpoint stacks.
MINIMIZERS_Q1: dict[int, tuple[float, ...]] = {
    1: (0.0,),
    2: (0.0, 1.0),
    3: (0.0, 0.5, 1.0),
    4: (0.0, 0.121997, 0.878003, 1.0),
    5: (0.0, 0.0, 0.5, 1.0, 1.0),
    6: (0.0, 0.0, 0.251705, 0.748295, 1.0, 1.0),
    7: (0.0, 0.0, 0.070484, 0.5, 0.929516, 1.0, 1.0),
    8: (0.0, 0.0, 0.0, 0.312315, 0.687685, 1.0, 1.0, 1.0),
    9: (0.0, 0.0, 0.0, 0.167687, 0.5, 0.832313, 1.0, 1.0, 1.0),
    10: (0.0, 0.0, 0.0, 0.049548, 0.349849, 0.650151, 0.950452, 1.0, 1.0, 1.0),
}

# Minimizers at q = 1/2 for k = 1..10: symmetric, fully distinct, with
# small but strictly positive edge gaps.
MINIMIZERS_Q_HALF: dict[int, tuple[float, ...]] = {
    1: (0.0,),
    2: (0.0, 1.0),
    3: (0.0, 0.5, 1.0),
    4: (0.0, 0.254547, 0.745453, 1.0),
    5: (0.0, 0.139429, 0.5, 0.860571, 1.0),
    6: (0.0, 0.081208, 0.337929, 0.662071, 0.918792, 1.0),
    7: (0.0, 0.049814, 0.23337, 0.5, 0.76663, 0.950187, 1.0),
    8: (0.0, 0.03194, 0.164831, 0.379072, 0.620928, 0.835169, 0.96806, 1.0),
    9: (0.0, 0.021274, 0.1189, 0.290198, 0.5, 0.709802, 0.8811, 0.978726, 1.0),
    10: (
        0.0,
        0.014644,
        0.087436,
        0.224634,
        0.403577,
        0.596423,
        0.775366,
        0.912564,
        0.985356,
        1.0,
    ),
}

# Critical exponents q_k of the branch crossing for even k (nine decimals;
# computed by bisection on the branch difference).
EVEN_CRITICAL_EXPONENTS: dict[int, float] = {
    4: 1.062682507,
    6: 1.155601329,
    8: 1.206132611,
    10: 1.238523533,
    12: 1.261308114,
    14: 1.278305167,
    16: 1.291510874,
    18: 1.302082885,
    20: 1.310744185,
}

# Critical exponent for every odd k >= 3 (closed form, independent of k).
ODD_CRITICAL_EXPONENT: float = 1.396363475

# Branch-energy checkpoints at k = 11 (m = 5): the interior branch is lower
# at q = 1.35 and higher at q = 1.43, bracketing the odd crossing.
BRANCH_CHECKPOINTS_K11: dict[str, float] = {
    "interior_at_1.35": 35.95205407,
    "endpoint": 36.03638324,
    "interior_at_1.43": 36.09652229,
}

# Chebyshev-Lobatto nodes for k = 5, in closed form.
LOBATTO_5: tuple[float, ...] = (
    0.0,
    (2.0 - np.sqrt(2.0)) / 4.0,
    0.5,
    (2.0 + np.sqrt(2.0)) / 4.0,
    1.0,
)

# Maximizer of the pairwise log-distance product for k = 4: endpoints plus
# the two roots of the degree-2 Jacobi polynomial, mapped to [0, 1].
LOG_NODES_4: tuple[float, ...] = (
    0.0,
    (1.0 - 1.0 / np.sqrt(5.0)) / 2.0,
    (1.0 + 1.0 / np.sqrt(5.0)) / 2.0,
    1.0,
)
