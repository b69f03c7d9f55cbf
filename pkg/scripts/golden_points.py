"""Print the reference point evaluations used as golden values in the tests."""

import math

from janus import (
    SqueezeParams,
    aux_t_threshold,
    benchmarks,
    covariance,
    from_ratio,
    moment_set,
    span_minimum,
)


def main() -> None:
    # Span-optimal Q variance for r = 1.0 against s = 0.9, in phase.
    opt = span_minimum(SqueezeParams(1.0, 0.0), SqueezeParams(0.9, 0.0))
    print("span optimum (r=1.0, s=0.9):")
    print(f"  lambda_minus = {opt.lambda_minus:.17g}")
    print(f"  lambda_plus  = {opt.lambda_plus:.17g}")
    print(f"  ratio        = {opt.ratio.real:.17g}")
    print(f"  constituent floor e^-2/2 = {0.5 * math.exp(-2.0):.17g}")

    # Representative quadratic-QFI state: x = y = 1/2, antiphase, t = -0.32/1.15.
    r0 = math.atanh(math.sqrt(0.5))
    state = from_ratio(SqueezeParams(r0, 0.0), SqueezeParams(r0, math.pi), -0.32 / 1.15)
    mset = moment_set(state)
    rep = benchmarks(mset)
    cov = covariance(mset)
    print("representative quadratic point (x = y = 1/2, antiphase):")
    print(f"  u            = {cov.u:.17g}")
    print(f"  S_dB         = {cov.S_dB:.17g}")
    print(f"  F_quad_env   = {rep.F_quad_env:.17g}")
    print(f"  benchmark    = {rep.F_quad_sq_at_u:.17g}")
    print(f"  enhancement  = {rep.F_quad_env / rep.F_quad_sq_at_u:.17g}")

    # Auxiliary-family break-even at s = 0.8.
    print(f"aux family variance threshold (s=0.8): t = {aux_t_threshold(0.8):.17g}")


if __name__ == "__main__":
    main()
