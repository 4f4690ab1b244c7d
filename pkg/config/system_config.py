"""
Engine configuration - general settings
"""
import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()


class SystemConfig:
    # Basic Settings
    PROJECT_NAME = "Graded GK Dimension Engine"
    VERSION = "1.0.0"
    DEBUG = True
    TESTING = False

    # Memo store settings
    CACHE_DIR_ENV = 'GKDIM_CACHE_DIR'
    CACHE_DB_NAME = 'component_dims.db'

    # Resource guard: enumerated words per multidegree
    WORD_CAP = 10 ** 6

    # Spanning settings
    FIX_FIRST_LETTER = False
    WORKERS = 1

    # Default degree bounds per subcommand
    DEFAULT_M_MAX = 6
    FIT_M_MAX = 60

    # Degree fitting
    FIT_STRIDES = (1, 2, 4)
    FIT_STABILITY_SHIFT = 2
    FIT_MIN_EXTRA_POINTS = 4

    # Accepted ranges for run configurations (inclusive)
    LIMITS = {
        'k': (1, 8),
        'n': (2, 6),
        'm_max': (1, 400),
    }

    # Brute-force sizes above which a run is flagged as slow
    SLOW_BRUTE_FORCE = {
        'sl2-z2': 8,
        'sl2-z2xz2': 7,
        'sl2-z': 7,
        'sln': 4,
    }

    # Logging settings
    LOG_LEVEL = 'INFO'
    LOG_FILE = None
    STRUCTURED_LOG_FILE = None
    LOG_ROTATION = '10 MB'
    LOG_RETENTION = 5
    LOG_FORMAT = '{time:YYYY-MM-DD HH:mm:ss} | {level} | {extra[component]}:{function}:{line} | {message}'

    # Built-in verification matrix
    VERIFY_MATRIX_PATH = Path(__file__).with_name('verify_matrix.json')

    @classmethod
    def cache_dir(cls):
        """Directory of the persistent memo store, or None for in-memory only."""
        value = os.environ.get(cls.CACHE_DIR_ENV)
        return Path(value) if value else None


class DevelopmentConfig(SystemConfig):
    """Development profile"""
    DEBUG = True
    TESTING = False


class ProductionConfig(SystemConfig):
    """Batch runs: quieter console, file log"""
    DEBUG = False
    TESTING = False
    LOG_LEVEL = 'WARNING'
    LOG_FILE = 'logs/gkdim.log'
    STRUCTURED_LOG_FILE = 'logs/gkdim.jsonl'


class TestingConfig(SystemConfig):
    """Test profile"""
    DEBUG = True
    TESTING = True
    LOG_LEVEL = 'WARNING'
    WORD_CAP = 10 ** 5


config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}


def get_config(profile=None):
    """Return the configuration class for a profile name; unknown or missing names give the default."""
    return config.get(profile or 'default', config['default'])
