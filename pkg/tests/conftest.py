import sys
from pathlib import Path

# test helpers (oracle, encoder, fleet generator) live next to the tests
sys.path.insert(0, str(Path(__file__).parent))
