"""Exact decision of Frobenius extensions of finite-dimensional coalgebras."""
from .coalgebra import (AxiomError, Bicomodule, Coalgebra, CoalgebraMorphism, Comodule, corestrict, hom_space,
                        is_injective_comodule, validate_bicomodule, validate_coalgebra, validate_comodule,
                        validate_morphism)
from .cotensor import cotensor, image_invariance, iota, omega
from .dual_algebra import (Algebra, AlgebraMorphism, ModuleRep, RingTensor, bimodule_hom_space,
                           check_frobenius_ring_extension, dual_cotensor_iso, dual_hom_iso, dualize_coalgebra,
                           dualize_extension, ring_tensor)
from .exact_linalg import GF, QQ, FieldSpec, InputError, Matrix, invertible_in_affine_family, kernel, solve
from .frobenius import (FrobeniusCertificate, check_frobenius_extension, counit_transformation, frobenius_system,
                        gamma_form, reconstruct_beta, triangle_check, unit_transformation, verify_certificate)
from .verdict import Verdict
from .zoo import build

__version__ = "0.1.0"
