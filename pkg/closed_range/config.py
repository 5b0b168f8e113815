import os
from pathlib import Path

import yaml
from dotenv import find_dotenv, load_dotenv

load_dotenv(find_dotenv(usecwd=True))

# --- Load settings.yaml ---
_settings_path = Path(__file__).parent / "settings.yaml"
with open(_settings_path) as _f:
    _cfg = yaml.safe_load(_f)

# --- Paths ---
PACKAGE_DIR = Path(__file__).parent
CANONICAL_SYMBOLS_FILE = PACKAGE_DIR / "data" / "canonical_symbols.yaml"

# --- Global grid ---
_grid = _cfg["grid"]
GRID_LEVELS = _grid["levels"]
GRID_ANGULAR_BASE = _grid["angular_base"]
GRID_R_MAX = 1.0 - 2.0 ** -_grid["r_max_exponent"]
GRID_CELL_CAP = int(os.environ.get("CLOSED_RANGE_CELL_CAP", _grid["cell_cap"]))

# --- Circle / segment rules ---
_lines = _cfg["lines"]
CIRCLE_POINTS = _lines["circle_points"]
SEGMENT_PANELS = _lines["segment_panels"]
SEGMENT_ORDER = _lines["segment_order"]

# --- Local subdisk grids ---
_subdisk = _cfg["subdisk"]
SUBDISK_LEVELS = _subdisk["levels"]
SUBDISK_ANGULAR = _subdisk["angular"]

# --- Norms ---
_norms = _cfg["norms"]
CALDERON_APERTURE = _norms["aperture"]
BOUNDARY_POINTS = _norms["boundary_points"]
SUP_SAMPLES = _norms["sup_samples"]
BETA_NET_SEPARATION = _norms["beta_net"]["separation"]
BETA_NET_R_LIMIT = 1.0 - 2.0 ** -_norms["beta_net"]["r_limit_exponent"]
NET_CAP = _norms["net_cap"]

# --- Density search ---
_density = _cfg["density"]
DENSITY_C_FACTORS = [float(c) for c in _density["c_factors"]]
DENSITY_ETAS = [float(e) for e in _density["etas"]]
DENSITY_DELTA_MIN = _density["delta_min"]
DENSITY_NET_SEPARATION = _density["net"]["separation"]
DENSITY_NET_R_LIMIT = 1.0 - 2.0 ** -_density["net"]["r_limit_exponent"]
DENSITY_LEVELS = _density["resolution"]["levels"]
DENSITY_ANGULAR = _density["resolution"]["angular"]
DENSITY_CHUNK_CENTERS = _density["chunk_centers"]

# --- Lower bounds ---
_lower = _cfg["lower_bound"]
BOUND_MIN = _lower["bound_min"]
BOUND_MAX_DROP = _lower["max_drop"]
ALPHA_ANGLES = _lower["alpha_angles"]
ALPHA_DEPTH = _lower["alpha_depth"]
ALPHA_REFINE_EXTRA_DEPTH = _lower["refine_extra_depth"]
CROSS_BETA_NET_SEPARATION = _lower["beta_net"]["separation"]
CROSS_BETA_NET_R_LIMIT = 1.0 - 2.0 ** -_lower["beta_net"]["r_limit_exponent"]
CROSS_BOUNDARY_POINTS = _lower["calderon_boundary_points"]

# --- Lemma laboratory ---
_lemma = _cfg["lemma"]
LEMMA_TOLERANCE = _lemma["tolerance"]
LEMMA_SAMPLES = _lemma["samples"]
LEMMA_MAX_DEGREE = _lemma["max_degree"]
LEMMA_ALPHA_RADIUS = _lemma["alpha_radius"]
LEMMA_ETA_RANGE = tuple(_lemma["eta_range"])
LEMMA_LAMBDA_RANGE = tuple(_lemma["lambda_range"])
LEMMA_EPSILONS = [float(e) for e in _lemma["epsilons"]]
LEMMA_STOLZ_APERTURE = _lemma["stolz_aperture"]
LEMMA_APERTURE_MARGIN = _lemma["aperture_margin"]
LEMMA_PROBE_ANGLES = _lemma["probe_angles"]
LEMMA_PROBE_DEPTH = _lemma["probe_depth"]
LEMMA_GRID_LEVELS = _lemma["grid_levels"]
LEMMA_GRID_R_MAX = 1.0 - 2.0 ** -_lemma["grid_r_max_exponent"]
LEMMA_GRID_ANGULAR_BASE = _lemma["grid_angular_base"]
LEMMA_MASS_SAMPLES = _lemma["mass_samples"]
LEMMA_MASS_ETA = _lemma["mass_eta"]
LEMMA_MASS_LAMBDA = _lemma["mass_lambda"]

# --- Reports / runtime ---
_report = _cfg["report"]
REPORT_SCHEMA = _report["schema"]
WORKERS = int(os.environ.get("CLOSED_RANGE_WORKERS", _report["workers"]))
LOG_LEVEL = os.environ.get("CLOSED_RANGE_LOG_LEVEL", "")
