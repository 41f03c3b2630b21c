import hashlib
import json
import logging
import os

from config import ensure_data_dir
from syndetic import SampleFormatError

logger = logging.getLogger(__name__)


def dumps(data) -> str:
    """Rendu JSON canonique (clés triées), identique d'une exécution à l'autre."""
    return json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True)


def save_json(filepath, data):
    with open(filepath, 'w', encoding='utf-8') as f:
        f.write(dumps(data))
        f.write('\n')


# ── Fichiers d'ensembles ──────────────────────────────────────────────────────

def parse_set_lines(lines, source='<texte>') -> list:
    """Un entier positif par ligne, strictement croissant, '#' = commentaire."""
    elements = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip('\n').rstrip('\r')
        if not line.strip():
            raise SampleFormatError(f"{source}:{lineno} : ligne vide interdite",
                                    {'line': lineno})
        content = line.split('#', 1)[0].strip()
        if not content:
            continue
        if not (content.isascii() and content.isdigit()):
            raise SampleFormatError(f"{source}:{lineno} : entier décimal attendu, reçu '{content}'",
                                    {'line': lineno})
        value = int(content)
        if value < 1:
            raise SampleFormatError(f"{source}:{lineno} : {value} n'est pas positif",
                                    {'line': lineno})
        if elements and value <= elements[-1]:
            kind = 'doublon' if value == elements[-1] else 'désordre'
            raise SampleFormatError(
                f"{source}:{lineno} : {kind} ({elements[-1]} puis {value})",
                {'line': lineno, 'previous': elements[-1], 'value': value},
            )
        elements.append(value)
    return elements


def read_set_file(filepath) -> list:
    try:
        with open(filepath, 'r', encoding='utf-8') as f:
            return parse_set_lines(f.read().splitlines(), source=filepath)
    except UnicodeDecodeError as e:
        raise SampleFormatError(f"{filepath} : encodage invalide (UTF-8 attendu) : {e}",
                                {'path': str(filepath), 'offset': e.start})
    except OSError as e:
        raise SampleFormatError(f"Fichier illisible {filepath}: {e}", {'path': str(filepath)})


def write_set_file(filepath, elements, header=None):
    with open(filepath, 'w', encoding='utf-8') as f:
        if header:
            for line in header.splitlines():
                f.write(f"# {line}\n")
        for n in elements:
            f.write(f"{n}\n")


# ── Enveloppes de sortie ──────────────────────────────────────────────────────

def envelope_filename(command: str, parameters: dict) -> str:
    digest = hashlib.sha1(dumps(parameters).encode('utf-8')).hexdigest()[:10]
    return f"{command}_{digest}.json"


def save_envelope(data: dict, directory=None) -> str:
    """Écrit l'enveloppe dans DATA_DIR ; même commande + paramètres → même fichier."""
    if directory is None:
        directory = ensure_data_dir()
    else:
        os.makedirs(directory, exist_ok=True)
    meta = data['command']
    path = os.path.join(directory, envelope_filename(meta['name'], meta['parameters']))
    save_json(path, data)
    logger.info(f"Enveloppe sauvegardée : {path}")
    return path
