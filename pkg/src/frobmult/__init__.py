"""Frobenius eigen-decompositions of intersection multiplicities over F_p[x]/I."""

from .exact import (FpScalar, Rational, SingularSystemError, format_rational, matrix_rank_fp,
                    parse_rational, solve_vandermonde, vandermonde)
from .poly import GradedRing, Poly, frobenius_power, monomial_basis, normal_form, parse_poly, polynomial_ring
from .groebner import (INFINITE, GroebnerBasis, ModuleElement, PresentedModule, buchberger, kernel,
                       krull_dim, module_length, quotient_module, syzygies)
from .complexes import (Complex, ComplexError, FreeComplex, PresentedComplex, Resolution, codim, cone,
                        direct_sum, hom_complex, homology_length, koszul, resolve, shift, star_dual,
                        strand_homology_length, support_dim, tensor)
from .frobenius import (CanonicalModule, OmegaComplex, UnsupportedRingError, canonical_module,
                        g_on_omega, hom_into_omega, is_cohen_macaulay, lf)
from .multiplicity import (EigenDecomposition, HypothesisViolation, MultiplicityReport,
                           OrderTooSmallError, PairingContext, check_numerical_vanishing,
                           check_self_duality, chi, decompose, decompose_sequence, dutta, euler_char,
                           multiplicity_report, phi_sequence, vdim_bound, xi, xi_analogs)

__version__ = "0.1.0"
