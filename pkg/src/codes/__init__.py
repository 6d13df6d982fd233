from .alphabet import PhaseAlphabet, common_alphabet, root_of_unity_sum
from .code import Code, CodeSet, PhaseVector, code_from_signs, evaluate, hconcat
from .construct import (
    MultMatrixParams,
    SzccsBundle,
    build_mccc_szccs,
    cyclic_row_shift,
    default_permutation_family,
    example1_mos,
    example1_permutations,
    extend_ccc,
    mos_dft,
    mos_hadamard,
    mult_matrix_ccc,
    multiplication_matrix,
    r_concat,
    szccs_parameters,
)
from .correlate import (
    ZERO_TOLERANCE,
    AccfVector,
    PacfGrid,
    aacf,
    accf,
    accf_decomposition,
    accf_decomposition_check,
    accf_vector,
    is_zero,
    pacf2d,
)
from .errors import (
    AlphabetError,
    CodeError,
    ConstructionError,
    DimensionError,
    DocumentError,
    FamilyError,
)
from .families import MosFamily, PermutationFamily, ZoneSpec
from .verify import (
    Property,
    Verdict,
    Violation,
    are_complementary_mates,
    cross_set_support,
    measure_inter_set_zone,
    measure_symmetric_zone,
    verify_ccc,
    verify_gcs,
    verify_mccc,
    verify_mos,
    verify_perfect_array,
    verify_permutation_family,
    verify_szccs,
)

__all__ = [
    "AccfVector",
    "AlphabetError",
    "Code",
    "CodeError",
    "CodeSet",
    "ConstructionError",
    "DimensionError",
    "DocumentError",
    "FamilyError",
    "MosFamily",
    "MultMatrixParams",
    "PacfGrid",
    "PermutationFamily",
    "PhaseAlphabet",
    "PhaseVector",
    "Property",
    "SzccsBundle",
    "Verdict",
    "Violation",
    "ZERO_TOLERANCE",
    "ZoneSpec",
    "aacf",
    "accf",
    "accf_decomposition",
    "accf_decomposition_check",
    "accf_vector",
    "are_complementary_mates",
    "build_mccc_szccs",
    "code_from_signs",
    "common_alphabet",
    "cross_set_support",
    "cyclic_row_shift",
    "default_permutation_family",
    "evaluate",
    "example1_mos",
    "example1_permutations",
    "extend_ccc",
    "hconcat",
    "is_zero",
    "measure_inter_set_zone",
    "measure_symmetric_zone",
    "mos_dft",
    "mos_hadamard",
    "mult_matrix_ccc",
    "multiplication_matrix",
    "pacf2d",
    "r_concat",
    "root_of_unity_sum",
    "szccs_parameters",
    "verify_ccc",
    "verify_gcs",
    "verify_mccc",
    "verify_mos",
    "verify_perfect_array",
    "verify_permutation_family",
    "verify_szccs",
]
