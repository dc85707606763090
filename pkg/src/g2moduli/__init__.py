"""Genus-2 curve invariants, automorphism classification, and reconstruction
of a curve over the base field from any rational moduli point."""

from .classify import classify_curve, classify_point, t_invariant
from .conics import (
    BrauerObstruction, Conic, ConicCubicData, CubicForm, conic_det,
    conic_obstruction, conic_parametrize, conic_point, cubic_pullback,
    hilbert_symbol, make_conic, v4_conic_cubic_data,
)
from .covariants import ClebschVector, clebsch_invariants, r_invariant
from .fields import GF, QQ, cube_root_char3, field_make, sqrt_in_field
from .forms import (
    BinaryForm, CurveModel, GL2Matrix, binary_form, curve_from_poly,
    curve_to_form, form_discriminant, gl2_matrix, gl2_transform, transvectant,
)
from .harness import fuzz_roundtrip, sweep_moduli
from .models import AutGroup, family_model
from .moduli import (
    IgusaVector, ModuliPoint, absolute_invariants, igusa_invariants,
    lift_point, moduli_point, rescale_invariants, same_moduli,
)
from .reconstruct import (
    ReconstructionResult, mestre_data_from_invariants, mestre_reconstruct,
    reconstruct, v4_reconstruct,
)

__version__ = "0.1.0"
