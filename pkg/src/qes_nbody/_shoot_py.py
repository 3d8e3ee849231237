"""Pure-Python radial RK4 integrator; fallback twin of the compiled kernel.

Arithmetic is ordered exactly like the Cython version so both backends walk
the same IEEE-double sequence: swapping backends must not move an eigenvalue.
"""

from __future__ import annotations

__all__ = ["integrate"]


def integrate(rho0, h, n, v_half, two_gamma_plus_one, e, u0, w0):
    """Integrate u'' = -(2g+1)/rho u' + (2V - E)u from rho0 over n RK4 steps.

    v_half holds V on the half-step grid rho0 + k*h/2, k = 0..2n.  Returns
    (node count, u_end, w_end) with u renormalized on overflow (sign-safe).
    """
    v = v_half.tolist() if hasattr(v_half, "tolist") else list(v_half)
    u = float(u0)
    w = float(w0)
    half = 0.5 * h
    sixth = h / 6.0
    nodes = 0
    prev_sign = 1 if u > 0.0 else (-1 if u < 0.0 else 0)
    for i in range(n):
        r1 = rho0 + i * h
        rm = r1 + half
        r2 = r1 + h
        g1 = 2.0 * v[2 * i] - e
        gm = 2.0 * v[2 * i + 1] - e
        g2 = 2.0 * v[2 * i + 2] - e
        c1 = two_gamma_plus_one / r1
        cm = two_gamma_plus_one / rm
        c2 = two_gamma_plus_one / r2
        k1u = w
        k1w = g1 * u - c1 * w
        au = u + half * k1u
        aw = w + half * k1w
        k2u = aw
        k2w = gm * au - cm * aw
        bu = u + half * k2u
        bw = w + half * k2w
        k3u = bw
        k3w = gm * bu - cm * bw
        cu = u + h * k3u
        cw = w + h * k3w
        k4u = cw
        k4w = g2 * cu - c2 * cw
        u = u + sixth * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        w = w + sixth * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
        if u > 1e250 or u < -1e250 or w > 1e250 or w < -1e250:
            u *= 1e-250
            w *= 1e-250
        sign = 1 if u > 0.0 else (-1 if u < 0.0 else 0)
        if sign != 0:
            if prev_sign != 0 and sign != prev_sign:
                nodes += 1
            prev_sign = sign
    return nodes, u, w
