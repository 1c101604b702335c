#!/usr/bin/env python3
"""Independent oracle for derived parameter and witness-vector dimensions.

Evaluates the closed-form dimension formulas directly from the profile
constants; the outputs are frozen into the unit and acceptance tests.
"""
import math


def derived(n, q, ell, beta, kappa, name):
    k = math.ceil(math.log2(q))
    m = 2 * n * k
    m_e = 2 * (n + ell) * k
    big_n = 2 ** ell
    q5 = -(-q // 5)  # ceil(q/5)
    d_gs = 10 * n * k * ell + 2 * m + 4 * m_e + 2 * ell - 3
    delta_beta = int(math.floor(math.log2(beta))) + 1
    delta_q5 = int(math.floor(math.log2(q5))) + 1
    d1 = (n + m_e) * ell * delta_beta
    d2 = ell * delta_q5
    d_prime = d1 + d2
    d_trace = 3 * d_prime
    d_denial = d_trace + 3 * ell - 1
    rows_gs = n * (ell + 3) + 2 * ell
    rows_tr = ell * (m_e + 1)
    print(f"{name}: k={k} m={m} m_E={m_e} N={big_n} ceil(q/5)={q5}")
    print(f"  invariants: beta*m_E={beta*m_e} (<{q5}: {beta*m_e < q5}), "
          f"2*ceil(q/5)={2*q5} (<floor(q/2)={q//2}: {2*q5 < q//2})")
    print(f"  delta_beta={delta_beta} delta_q5={delta_q5}")
    print(f"  D_gs={d_gs} rows_gs={rows_gs}")
    print(f"  D'={d_prime} (D1={d1} D2={d2}) D_trace=3D'={d_trace} rows_trace={rows_tr}")
    print(f"  D_denial={d_denial}")


derived(4, 12289, 3, 3, 10, "T1")
derived(8, 12289, 4, 3, 16, "T2")
derived(4, 12289, 4, 3, 10, "T1-l4 (size-scaling fixture)")
