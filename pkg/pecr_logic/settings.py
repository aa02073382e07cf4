import os


def _int_tuple(value: str, default: tuple) -> tuple:
    """
    Parse a comma separated list of integers from the environment
    :param value: raw environment value, may be empty
    :param default: tuple returned when value is not set
    """
    if not value:
        return default
    return tuple(int(v) for v in value.split(','))


# Machine environment [msym mstr mnat]
PECR_MACH = _int_tuple(os.environ.get('PECR_MACH', ''), (128, 4096, 2147483647))
# List bounds [nprem npmax nx ny]
PECR_MLST = _int_tuple(os.environ.get('PECR_MLST', ''), (9, 64, 3, 1))
# Variable ids a..z, a1..z1, ... up to z9
PECR_NVAR = int(os.environ.get('PECR_NVAR', 260))

# Deadline for the evaluator, counted in atomic program executions
PECR_EXECUTION_BUDGET = int(os.environ.get('PECR_EXECUTION_BUDGET', 10 ** 6))
# Largest premise searched exhaustively for reducibility
PECR_IRREDUCIBILITY_BOUND = int(os.environ.get('PECR_IRREDUCIBILITY_BOUND', 6))

PECR_PROVER = {
    'depth': int(os.environ.get('PECR_PROVER_DEPTH', 8)),
    'facts': int(os.environ.get('PECR_PROVER_FACTS', 4000)),
    'time': int(os.environ.get('PECR_PROVER_TIME', 60)),
    'seed': int(os.environ.get('PECR_PROVER_SEED', 0)),
}

# Visited states kept in memory by cycle detection before switching to Brent
PECR_CYCLE_MEMORY = int(os.environ.get('PECR_CYCLE_MEMORY', 100000))
# bound_range evaluates every state of the box below this count
PECR_EXACT_BOUND_LIMIT = int(os.environ.get('PECR_EXACT_BOUND_LIMIT', 10 ** 6))

PECR_CACHE_TIMEOUT = int(os.environ.get('PECR_CACHE_TIMEOUT', 300))
