import html
import json
import os
from datetime import datetime

from reportlab.lib import colors
from reportlab.lib.enums import TA_CENTER
from reportlab.lib.pagesizes import A4
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
from reportlab.platypus import Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle

from config import REPORT_DIR

MAX_ROWS = 1000


def _cell(value, style):
    """Les grands entiers passent dans un Paragraph pour être coupés, jamais tronqués."""
    if isinstance(value, (dict, list)):
        value = json.dumps(value, ensure_ascii=False, sort_keys=True)
    text = str(value) if value is not None else '-'
    # coupure possible tous les 40 chiffres
    if len(text) > 40 and ' ' not in text:
        text = ' '.join(text[i:i + 40] for i in range(0, len(text), 40))
    return Paragraph(html.escape(text, quote=False), style)


def _table(data, header_color='#2874a6'):
    table = Table(data, repeatRows=1)
    table.setStyle(TableStyle([
        ('BACKGROUND', (0, 0), (-1, 0), colors.HexColor(header_color)),
        ('TEXTCOLOR', (0, 0), (-1, 0), colors.whitesmoke),
        ('ALIGN', (0, 0), (-1, -1), 'CENTER'),
        ('GRID', (0, 0), (-1, -1), 1, colors.grey),
        ('VALIGN', (0, 0), (-1, -1), 'MIDDLE'),
    ]))
    return table


def generate_envelope_pdf(envelope: dict, filename=None):
    """Génère le rapport PDF d'une enveloppe de commande."""
    meta = envelope['command']
    if filename is None:
        filename = os.path.join(
            REPORT_DIR, f"rapport_{meta['name']}_{datetime.now().strftime('%Y%m%d_%H%M%S')}.pdf")
    directory = os.path.dirname(os.path.abspath(filename))
    if not os.path.isdir(directory):
        raise FileNotFoundError(f"Dossier inexistant : {directory}")
    doc = SimpleDocTemplate(filename, pagesize=A4, topMargin=30, bottomMargin=30,
                            leftMargin=30, rightMargin=30)
    styles = getSampleStyleSheet()
    elements = []

    title_style = ParagraphStyle(
        'Title', parent=styles['Heading1'],
        fontSize=18, textColor=colors.HexColor('#1a5276'),
        alignment=TA_CENTER
    )
    subtitle_style = ParagraphStyle(
        'Subtitle', parent=styles['Normal'],
        fontSize=11, textColor=colors.HexColor('#555555'),
        alignment=TA_CENTER
    )
    body_style = ParagraphStyle(
        'Body', parent=styles['Normal'],
        fontSize=8, leading=10
    )

    elements.append(Paragraph(f"RAPPORT : {meta['name'].upper()}", title_style))
    elements.append(Spacer(1, 6))
    elements.append(Paragraph(f"Version {meta['version']}", subtitle_style))
    elements.append(Spacer(1, 16))

    # Paramètres
    params = [['Paramètre', 'Valeur']]
    for key in sorted(meta['parameters']):
        params.append([key, _cell(meta['parameters'][key], body_style)])
    elements.append(_table(params))
    elements.append(Spacer(1, 12))

    if envelope.get('error'):
        elements.append(Paragraph(f"<font color='red'><b>Erreur :</b> {html.escape(envelope['error'], quote=False)}</font>",
                                  styles['Normal']))
        elements.append(Spacer(1, 8))
    for w in envelope.get('warnings', []):
        elements.append(Paragraph(f"<font color='orange'>⚠ {html.escape(w, quote=False)}</font>", styles['Normal']))
    elements.append(Spacer(1, 8))

    payload = envelope.get('payload') or {}
    summary = [[k, _cell(v, body_style)] for k, v in sorted(payload.items()) if k != 'rows']
    if summary:
        elements.append(_table([['Résultat', 'Valeur']] + summary, header_color='#1a5276'))
        elements.append(Spacer(1, 12))

    rows = payload.get('rows') or []
    if rows:
        columns = list(rows[0].keys())
        data = [columns]
        for row in rows[:MAX_ROWS]:
            data.append([_cell(row.get(c), body_style) for c in columns])
        elements.append(_table(data))
        if len(rows) > MAX_ROWS:
            elements.append(Spacer(1, 6))
            elements.append(Paragraph(f"… {len(rows) - MAX_ROWS} ligne(s) non affichée(s)",
                                      subtitle_style))

    doc.build(elements)
    return filename
