import argparse
from importlib.resources import files
from pathlib import Path

from hiermod.io_formats import parse_reference_table

DVBSH_TABLE = files("hiermod").joinpath("data/dvbsh_qpsk_ber1e-5.csv")


def parser(description, default_out):
    p = argparse.ArgumentParser(description=description)
    p.add_argument("--out", type=Path, default=Path("results") / default_out)
    p.add_argument("--ref-table", type=Path, default=None, help="reference table (default: bundled DVB-SH QPSK rows)")
    return p


def load_table(path):
    text = path.read_text() if path else DVBSH_TABLE.read_text()
    return parse_reference_table(text, str(path) if path else "dvbsh_qpsk_ber1e-5.csv")


def write(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    print(f"wrote {path}")
