import os

# =====================================================
# CONFIGURATION
# =====================================================

VERSION = "1.0.0"

# Niveau de log (stderr uniquement, stdout reste réservé aux résultats)
LOG_LEVEL = os.getenv('LOG_LEVEL', 'WARNING').upper()

# Nombre de processus pour la recherche exhaustive (1 = tout dans le processus courant)
WORKERS = int(os.getenv('WORKERS', 1))

# Valeurs par défaut des commandes
DEFAULT_COUNT = int(os.getenv('DEFAULT_COUNT', 5))
DEFAULT_GAP_BOUND = int(os.getenv('DEFAULT_GAP_BOUND', 2))
DEFAULT_SEARCH_BOUND = int(os.getenv('DEFAULT_SEARCH_BOUND', 1000))
DEFAULT_TRIES = int(os.getenv('DEFAULT_TRIES', 1))

# Dossier de données : DATA_DIR si défini, sinon ./data/ local
_BASE_DIR = os.path.dirname(os.path.abspath(__file__))
DATA_DIR = os.getenv('DATA_DIR', os.path.join(_BASE_DIR, 'data'))

# Rapports PDF sans chemin explicite
REPORT_DIR = os.getenv('REPORT_DIR', '/tmp')


def ensure_data_dir():
    os.makedirs(DATA_DIR, exist_ok=True)
    return DATA_DIR
