# --- Orbit generation ---
DEFAULT_STEPS = 3
DEFAULT_OP = "RC"
DEFAULT_H = 0
MAX_ORBIT_STEPS = 64

# --- Brute-force search ---
DEFAULT_SEARCH_HEIGHT = 20
CENSUS_HEIGHT = 50
ZERO_SEARCH_DENOMINATOR = 6
SEARCH_GRID_DIMS = 3

# --- Build-time identity checks ---
BUILD_CHECK_SAMPLES = 3
RANDOM_SEED = 20240917
RANDOM_NUMERATOR_BOUND = 9
RANDOM_DENOMINATOR_BOUND = 5
PROPERTY_CASES = 100

# --- Number fields ---
MAX_NORM_DEGREE = 6

# --- Output ---
LOG_LEVEL = "INFO"
JSON_INDENT = 2

if __name__ == "__main__":
    print(f"DEFAULT_STEPS: {DEFAULT_STEPS}")
    print(f"DEFAULT_OP: {DEFAULT_OP}")
    print(f"DEFAULT_H: {DEFAULT_H}")
    print(f"MAX_ORBIT_STEPS: {MAX_ORBIT_STEPS}")
    print(f"DEFAULT_SEARCH_HEIGHT: {DEFAULT_SEARCH_HEIGHT}")
    print(f"CENSUS_HEIGHT: {CENSUS_HEIGHT}")
    print(f"ZERO_SEARCH_DENOMINATOR: {ZERO_SEARCH_DENOMINATOR}")
    print(f"SEARCH_GRID_DIMS: {SEARCH_GRID_DIMS}")
    print(f"BUILD_CHECK_SAMPLES: {BUILD_CHECK_SAMPLES}")
    print(f"RANDOM_SEED: {RANDOM_SEED}")
    print(f"RANDOM_NUMERATOR_BOUND: {RANDOM_NUMERATOR_BOUND}")
    print(f"RANDOM_DENOMINATOR_BOUND: {RANDOM_DENOMINATOR_BOUND}")
    print(f"PROPERTY_CASES: {PROPERTY_CASES}")
    print(f"MAX_NORM_DEGREE: {MAX_NORM_DEGREE}")
    print(f"LOG_LEVEL: {LOG_LEVEL}")
    print(f"JSON_INDENT: {JSON_INDENT}")
