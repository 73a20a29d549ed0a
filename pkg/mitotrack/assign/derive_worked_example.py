"""Derives the costs of one detection facing one object by hand.

The detection is certainly not clutter and lies exactly on the object. Both densities have a
covariance of I / 2, so that their sum is the identity and the spatial score is 1 / 2π.

Run as ``python -m mitotrack.assign.derive_worked_example``.

"""
import math


P_DETECT = .9
P_BIRTH = .1
EXISTENCE = 1.
CLUTTER = 0.


def derive():
    score = 1 / (2 * math.pi)
    explained = P_DETECT * EXISTENCE * score
    normalization = P_BIRTH + explained
    assigned = (1 - CLUTTER) * explained / normalization
    return {
        'score': score,
        'assigned_probability': assigned,
        'assignment_cost': -math.log(assigned),
        'unassigned_cost': -math.log((1 - CLUTTER) - assigned)
    }


if __name__ == '__main__':
    for name, value in derive().items():
        print(f'{name}: {value:.10f}')
