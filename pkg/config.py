import os

from dotenv import load_dotenv

load_dotenv()

# --- Spectral iteration ---
SPECTRAL_TOL = float(os.getenv("HYPERSPEC_TOL", "1e-10"))
SPECTRAL_MAX_ITER = int(os.getenv("HYPERSPEC_MAX_ITER", "100000"))

# --- Comparison tolerances ---
RHO_COMPARISON_TOL = float(os.getenv("HYPERSPEC_RHO_TOL", "1e-9"))
SHADOW_EQUALITY_TOL = float(os.getenv("HYPERSPEC_SHADOW_TOL", "1e-8"))
EDGE_COMPARISON_TOL = float(os.getenv("HYPERSPEC_EDGE_TOL", "1e-9"))

# --- Capacity guards ---
ISOMORPHISM_MAX_VERTICES = int(os.getenv("HYPERSPEC_ISO_MAX_N", "12"))
PATTERN_MAX_EDGES = int(os.getenv("HYPERSPEC_PATTERN_MAX_EDGES", "12"))
FAMILY_MAX_ADDED_VERTICES = int(os.getenv("HYPERSPEC_FAMILY_MAX_ADDED", "12"))
EXHAUSTIVE_MAX_CANDIDATES = int(os.getenv("HYPERSPEC_EXHAUSTIVE_MAX_CANDIDATES", "5000"))
EXHAUSTIVE_MAX_VERTICES = int(os.getenv("HYPERSPEC_EXHAUSTIVE_MAX_N", "12"))
DENSE_ORACLE_MAX_N = int(os.getenv("HYPERSPEC_DENSE_MAX_N", "4096"))

# Consecutive rejections allowed per candidate edge before random generation stops
RANDOM_STALL_FACTOR = int(os.getenv("HYPERSPEC_STALL_FACTOR", "50"))

# "checked" raises once a walk count leaves the signed 64-bit range, "bigint" never does
WALK_OVERFLOW_POLICY = os.getenv("HYPERSPEC_WALK_OVERFLOW", "checked")

CANONICAL_CACHE_SIZE = int(os.getenv("HYPERSPEC_CANONICAL_CACHE", "8192"))

# --- Runtime ---
DEFAULT_THREADS = int(os.getenv("HYPERSPEC_THREADS", "1"))
LOG_LEVEL = os.getenv("HYPERSPEC_LOG_LEVEL", "WARNING")

# --- Reports ---
TOOL_VERSION = "0.3.0"
REPORT_SCHEMA_VERSION = "1.0"
REPORT_SCHEMA_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), "report_schema.json")
