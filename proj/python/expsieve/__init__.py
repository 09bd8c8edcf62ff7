"""Certified rational-root and irreducibility sieving for exponential
specializations f(a^n, X) of integer polynomials.

The heavy lifting lives in the compiled extension ``expsieve._core``; this
package re-exports its public surface.
"""

from ._core import (
    Poly,
    SieveConfig,
    brute_oracle,
    certify,
    clique_extract,
    d_ell_curve,
    density_sweep,
    factorize,
    make_config,
    many_primes_check,
    multiplicative_order,
    one_prime_check,
    parse_poly,
    phi_tail_check,
    phi_tail_sum,
    prime_range,
    qualify_prime,
    schedule_parameters,
    select_sites,
    vanishing_lead_check,
)

__all__ = [
    "Poly",
    "SieveConfig",
    "brute_oracle",
    "certify",
    "clique_extract",
    "d_ell_curve",
    "density_sweep",
    "factorize",
    "make_config",
    "many_primes_check",
    "multiplicative_order",
    "one_prime_check",
    "parse_poly",
    "phi_tail_check",
    "phi_tail_sum",
    "prime_range",
    "qualify_prime",
    "schedule_parameters",
    "select_sites",
    "vanishing_lead_check",
]

__version__ = "0.1.0"
