"""
The step law
============

Each step recalls a uniformly chosen earlier step.  A recalled +1 or -1
is repeated with probability p, reversed with probability q, or turned
into a rest with probability r; a recalled rest is always copied.  Only
the counts of +1, -1 and 0 steps matter.
"""
from memwalk import Parameters, WalkState, first_step_distribution, step_distribution

params = Parameters(p=0.5, q=0.3, r=0.2, s=0.5)
print("first step:", first_step_distribution(params).as_tuple())

# two steps taken, one right and one rest
state = WalkState(t=2, n_plus=1, n_minus=0, n_zero=1)
law = step_distribution(params, state)
print("after (+1, 0):  plus=%.3f zero=%.3f minus=%.3f" % law.as_tuple())

# mirroring the history mirrors the law
print("mirrored:       plus=%.3f zero=%.3f minus=%.3f" % step_distribution(params, state.mirrored()).as_tuple())

# rests accumulate: once most steps are rests, rests dominate
late = WalkState(t=100, n_plus=10, n_minus=5, n_zero=85)
print("mostly resting: plus=%.3f zero=%.3f minus=%.3f" % step_distribution(params, late).as_tuple())
