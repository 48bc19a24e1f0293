"""Compare the old and new single-state inner bounds at R1 = 1 on the XOR-state channel.

Run: python demos/example1_bounds.py
"""
import numpy as np

from macsi.channels import build_example_double, build_example_single
from macsi.errors import R1Infeasible
from macsi.regions import (
    assemble_double,
    assemble_single,
    eval_li,
    eval_thm1,
    eval_thm2,
    example_aux_li,
    example_aux_thm1,
    example_aux_thm2,
    full_coop_sum_capacity,
    region_polygon,
    thm1_max_r2,
    thm2_feasible,
    thm2_max_r2,
)

ch = build_example_single()
p = ch.p_w.reshape(2, 2).sum(axis=1)[1]
print(f"state bits are Bernoulli({p:.6f}), so each carries h2(p) = 1/2 bit")

# old bound: describing all of W costs as much as it buys
for label, v_is_state in (("V = W", True), ("V constant", False)):
    b = eval_thm1(assemble_single(ch, example_aux_thm1(v_is_state)))
    try:
        r2 = thm1_max_r2(b, 1.0)
        print(f"old bound, {label:10s}: max R2 at R1 = 1 is {r2:.4f}")
    except R1Infeasible:
        print(f"old bound, {label:10s}: R1 = 1 unreachable (R1 <= {b['rate1']:.4f})")

# new bound: user 2 describes only the state bit that hits user 1
b = eval_thm2(assemble_single(ch, example_aux_thm2()))
cert = thm2_feasible(b, (1.0, 0.5))
print(f"new bound: (1, 0.5) feasible with slack rates {np.round(cert.as_array(), 6).tolist()}")
print(f"new bound: max R2 at R1 = 1 is {thm2_max_r2(b, 1.0):.6f}")
print(f"full-cooperation sum capacity: {full_coop_sum_capacity(ch):.6f}")

d = build_example_double()
poly = region_polygon(eval_li(assemble_double(d, example_aux_li())))
print(f"double-state Li-type region vertices: {poly.vertices().round(6).tolist()}")
