"""Regenerate src/kzeros/data/reference_zeros.json from the tabular source."""
import json
import re
import sys
from pathlib import Path

ROW = re.compile(r"^\s*\$(\d+\.\d+)\$\s*&(.*)$")
ENTRY = re.compile(r"\$\s*(-?[\d.]+)\s*(?:\\pm\s*([\d.]+)\s*\\mathrm\{i\})?\s*\$")


def rows(text):
    body = text[text.index("\\begin{tabular}"):text.index("\\end{tabular}")]
    body = re.sub(r"\\phantom\{\$[^$]*\$\}", "", body).replace("\\hline", "")
    chunks = re.split(r"\\\\", body)
    for chunk in chunks:
        line = " ".join(chunk.split())
        m = ROW.match(line)
        if not m:
            continue
        zeros = []
        for re_part, im_part in ENTRY.findall(m.group(2)):
            zeros.append([float(re_part), float(im_part) if im_part else 0.0])
        yield {"nu": float(m.group(1)), "columns": zeros}


def main(src, dst):
    data = list(rows(Path(src).read_text()))
    Path(dst).write_text(json.dumps(data, indent=1) + "\n")
    print(f"{len(data)} rows -> {dst}")


if __name__ == "__main__":
    main(*sys.argv[1:3])
