"""SG-WLS command-line package."""

from pathlib import Path

from cli.bench import BenchmarkRunner, BenchRecord

# Set package version
__version__ = "0.1.0"

# Set project directories
BASE_DIR = Path(__file__).parent.parent
LIBS_DIR = BASE_DIR / "libs"
