"""
A long orbit of the transfer map T_3
====================================

Masses alpha=3, beta=1.  The orbit keeps E, P, H and the trace
coefficients constant; its projection on (x1, x2, x3) fills a torus-like
surface.  Writes orbit files to ./orbit_demo and a gnuplot script.
"""
import time
from pathlib import Path

from ybcollide import export
from ybcollide.scalars import Sampler
from ybcollide.states import ChainParams, ChainState
from ybcollide.transfer import coordinate_bounds, independence_rank, iterate

p = ChainParams.autonomous(3.0, 1.0, 3)
smp = Sampler(1)
s = ChainState(smp.positive(3, 0.5, 2), smp.positive(3, 0.5, 2))

rec = export.OrbitRecorder()
t0 = time.perf_counter()
iterate(s, p, 200000, observer=rec, stride=20)
print(f"{rec.steps[-1]} steps in {time.perf_counter() - t0:.1f}s")

for k, d in export.max_relative_drift(rec.reports).items():
    print(f"  drift of {k:6s} {d:.1e}")

print("box from the energy:", coordinate_bounds(s, p))
print("rank of (I0, I1, I2, E, P, H):",
      independence_rank(s, p, ["I0", "I1", "I2", "E", "P", "H"]))

out = Path("orbit_demo")
out.mkdir(exist_ok=True)
export.write_orbit_csv(out / "orbit.csv", rec.steps, rec.states)
export.write_projection_csv(out / "projection.csv", rec.states, ["x1", "x2", "x3"])
export.write_text(out / "plot.gp", export.plot_script("projection.csv", ["x1", "x2", "x3"], "T_3"))
print("gnuplot script:", out / "plot.gp")
