import logging
import sys

from config import LOG_LEVEL

logging.basicConfig(
    level=getattr(logging, LOG_LEVEL, logging.WARNING),
    stream=sys.stderr,
    format='%(asctime)s %(levelname)s %(name)s: %(message)s',
)
logger = logging.getLogger(__name__)

# Les solutions de Pell dépassent vite la limite de conversion int → str
if hasattr(sys, 'set_int_max_str_digits'):
    sys.set_int_max_str_digits(0)

from cli_handler import run  # noqa: E402


def main():
    logger.info("Démarrage pellshift")
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
