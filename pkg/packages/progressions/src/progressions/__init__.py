from progressions.corpus import (
    CorpusInstance,
    certify_corpus,
    random_corpus,
    run_instance,
)
from progressions.extract import (
    brute_force_max_proper,
    certify,
    cover_constant,
    extract_progression,
    result_progression,
    verify_cover,
)
from progressions.models import (
    BudgetExceededError,
    CertificationError,
    CorpusRecord,
    CoverReport,
    ExtractionResult,
    NotDivisibleError,
    ProgressionError,
)
from progressions.progression import (
    Progression,
    concatenate,
    is_divisible,
    is_proper,
    is_proper_mod,
    large_set_power_check,
    progression_elements,
    sum_proper_check,
)
from progressions.sets import (
    SymmetricSet,
    difference_set,
    element_mask,
    mask_elements,
    minkowski_sum,
    sumset_power,
    word_ball,
    word_length,
)

__all__ = [
    "BudgetExceededError",
    "CertificationError",
    "CorpusInstance",
    "CorpusRecord",
    "CoverReport",
    "ExtractionResult",
    "NotDivisibleError",
    "Progression",
    "ProgressionError",
    "SymmetricSet",
    "brute_force_max_proper",
    "certify",
    "certify_corpus",
    "concatenate",
    "cover_constant",
    "difference_set",
    "element_mask",
    "extract_progression",
    "is_divisible",
    "is_proper",
    "is_proper_mod",
    "large_set_power_check",
    "mask_elements",
    "minkowski_sum",
    "progression_elements",
    "random_corpus",
    "result_progression",
    "run_instance",
    "sum_proper_check",
    "sumset_power",
    "verify_cover",
    "word_ball",
    "word_length",
]
