"""Zumkeller numbers: classification, pair-sum scans, certified constructions."""

from .arith import (
    Factorization,
    SigmaTable,
    crt_solve,
    divisors,
    factorize,
    gcd,
    is_prime,
    is_square,
    primes_up_to,
    sigma,
    sigma_sieve,
)
from .classify import (
    CONGRUENCE_RULES,
    CongruenceRule,
    RejectionReason,
    ZumkellerVerdict,
    abundancy,
    certify_congruence_rules,
    congruence_fast_path,
    coprime_multiple_certify,
    is_practical,
    is_zumkeller,
)
from .additive import (
    PairType,
    RangeTable,
    RepresentationReport,
    build_range_table,
    classify_pair_sums,
    density_counts,
    find_pair_witness,
    non_representable_list,
    scan_conjecture_18k3,
    verify_even_characterization,
    verify_zum_practical,
    verify_zum_prime,
    verify_zum_square,
)
from .structure import (
    ConsecutiveWitness,
    OddDecomposition,
    PrimorialBlock,
    TableRow,
    compute_A_lambda,
    compute_f_and_A,
    compute_u_lambda,
    construct_consecutive_witness,
    decompose_odd,
    find_runs,
    load_table1,
    polynomial_family_always,
    polynomial_family_infinite,
    scan_primorial_square_nonrep,
    verify_table1,
    zumkeller_check_block,
)
from .store import (
    BitmapFile,
    RunManifest,
    export_csv,
    export_witness_csv,
    import_csv,
    load_bitmap,
    load_manifest,
    save_bitmap,
    save_manifest,
)
from .errors import (
    BitmapChecksumError,
    BitmapFormatError,
    BitmapTruncatedError,
    BitmapVersionError,
    DomainError,
    PreconditionError,
    ResourceLimitError,
)

__version__ = "0.1.0"
