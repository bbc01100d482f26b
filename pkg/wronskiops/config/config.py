from fractions import Fraction
from os import getenv

from dotenv import load_dotenv

load_dotenv()


class Config:
    # Expansion oracle limits
    BUDGET_DEGREE = int(getenv('WRONSKIOPS_BUDGET_DEGREE', '10000'))
    BUDGET_SPARSITY = int(getenv('WRONSKIOPS_BUDGET_SPARSITY', '100000'))

    # Whitebox PIT cost grows like 2^(m l^2 log t), so the basis is capped
    BASIS_CAP = int(getenv('WRONSKIOPS_BASIS_CAP', '5'))
    QUERY_CAP = int(getenv('WRONSKIOPS_QUERY_CAP', '200000'))

    # Matrices up to this size are expanded over permutations, larger ones use Bareiss
    PERMUTATION_MAX = int(getenv('WRONSKIOPS_PERMUTATION_MAX', '5'))

    # 2.7182818284590453 > e; a-priori bounds are ceilings of over-approximations
    E_UPPER = Fraction(27182818284590453, 10**16)

    SEED = int(getenv('WRONSKIOPS_SEED', '1'))
    WORKERS = int(getenv('WRONSKIOPS_WORKERS', '1'))
    LOG_LEVEL = getenv('WRONSKIOPS_LOG_LEVEL', 'WARNING')

    SUITE_CASES = {
        'power-derivative': 200,
        'factorization': 100,
        'soundness': 500,
        'pit-agreement': 300,
        'optimality': 6,
        'frobenius': 50,
        'descartes': 200,
        'heart': 50,
    }

    @staticmethod
    def suite_cases(suite: str) -> int:
        return int(getenv(f"WRONSKIOPS_CASES_{suite.upper().replace('-', '_')}", str(Config.SUITE_CASES[suite])))
