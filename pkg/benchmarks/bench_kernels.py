"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from floatlab import genbodies, kernels
from floatlab.bodies import lp_ball, regular_polygon, uniform_directions
from floatlab.floating import floating_body


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def cases():
    rng = np.random.default_rng(0)
    v = np.array(regular_polygon(720).vertices)
    u = uniform_directions(4000)
    t = rng.uniform(-0.9, 0.9, len(u))
    far = rng.normal(size=(2000, 2)) * 1.5
    near = rng.uniform(-0.5, 0.5, size=(2000, 2))
    ang = np.sort(rng.uniform(0, 2 * np.pi, 20000))
    normals = np.stack([np.cos(ang), np.sin(ang)], axis=1)
    offsets = rng.uniform(0.9, 1.1, len(ang))
    return {
        "halfplane_intersection (20000 lines)": lambda: kernels.halfplane_intersection(normals,
                                                                                       offsets),
        "cap_areas (720-gon, 4000 cuts)": lambda: kernels.cap_areas(v, u, t),
        "hull_excess (720-gon, 2000 pts)": lambda: kernels.hull_excess(v, far),
        "polar_areas (720-gon, 2000 pts)": lambda: kernels.polar_areas(v, near),
        "overlap_areas (720-gon, 2000 shifts)": lambda: kernels.overlap_areas(v, near),
        "floating_body (720-gon, m=720)": lambda: floating_body(regular_polygon(720), 0.2, 720),
        "convolution_body (720-gon, 720 rays)": lambda: genbodies.convolution_body(
            regular_polygon(720), 0.5),
        "floating_body (B2_4, m=2048)": lambda: floating_body(lp_ball(2, 4), 0.1, 2048),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the python backend is timed")
    print(f"{'case':42s}" + "".join(f"{b:>12s}" for b in backends) + "     speedup")
    for name, fn in cases().items():
        row = {}
        for b in backends:
            kernels.use_backend(b)
            fn()
            row[b] = _best(fn, args.repeat)
        line = f"{name:42s}" + "".join(f"{row[b]:11.4f}s" for b in backends)
        if len(row) == 2:
            line += f"  {row['python'] / row['cython']:9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
