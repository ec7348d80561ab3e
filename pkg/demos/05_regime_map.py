"""
Regime map
==========

How fast the variance grows at long times depends on which of two
effects wins: memory (exponent 2 gamma) or rests (exponent 1 - r).
Sweeping a line of fixed p shows the competition.
"""
from memwalk import Parameters, classify, sweep_line
from memwalk.regimes import analytic_exponent

for p in (0.625, 0.3):
    print(f"fixed p = {p}:")
    for iv in sweep_line("p", p).intervals:
        where = f"q = {iv.start:.4f}" if iv.is_point else f"q in [{iv.start:.4f}, {iv.end:.4f}]"
        print(f"  {iv.regime:<24} {where}")

print("\npredicted vs fitted exponent (trailing decade up to t = 1e6):")
for pqr in [(0.8, 0.1, 0.1), (0.45, 0.05, 0.5), (0.3, 0.3, 0.4), (0.3, 0.1, 0.6), (0.75, 0.25, 0.0)]:
    params = Parameters(*pqr)
    rep = classify(params)
    fit = analytic_exponent(params)
    note = {None: "  log factor unknown", True: "  t ln t"}.get(rep.log_correction, "")
    print(f"  {str(pqr):<18} {rep.regime:<24} {rep.exponent:.2f}  fit {fit.exponent:.3f}{note}")
