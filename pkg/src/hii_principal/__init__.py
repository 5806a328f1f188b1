"""Exact right-hand side of the HII formal degree conjecture for principal series blocks."""

from .exceptions import HiiError, IdentityViolation
from .rootdata import BasedRootDatum, construct_root_datum, weyl_group
from .ramification import InertialDatum, c_group, conductor_function, phi_chi
from .volumes import volume_ratio_and_epsilon
from .parameters import Parameter, TorusElement, adjoint_wd, gamma_abs_squared_at_zero, steinberg_parameter
from .centralizers import s_sharp_steinberg
from .hii import BlockInput, VerifyOptions, hii_rhs, theorem_chain_check, verify_suite

__all__ = [
    'HiiError',
    'IdentityViolation',
    'BasedRootDatum',
    'construct_root_datum',
    'weyl_group',
    'InertialDatum',
    'c_group',
    'conductor_function',
    'phi_chi',
    'volume_ratio_and_epsilon',
    'Parameter',
    'TorusElement',
    'adjoint_wd',
    'gamma_abs_squared_at_zero',
    'steinberg_parameter',
    's_sharp_steinberg',
    'BlockInput',
    'VerifyOptions',
    'hii_rhs',
    'theorem_chain_check',
    'verify_suite',
]
