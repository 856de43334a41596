"""Load a group from a generator file and certify it from the command line.

The file lists one permutation per line in 1-based cycle notation, after a
``degree = n`` header.  The example is the Klein four-group acting regularly.
"""
import json
import tempfile
from pathlib import Path

from transquad.cli import main

text = """# Klein four-group on four points
degree = 4
(1 2)(3 4)
(1 3)(2 4)
"""

with tempfile.TemporaryDirectory() as tmp:
    gens = Path(tmp) / "klein.gens"
    gens.write_text(text)
    out = Path(tmp) / "cert.json"
    code = main(["certify", "--group", f"file:{gens}", "--alpha", "2", "--jobs", "1",
                 "-o", str(out)])
    doc = json.loads(out.read_text())
    print(f"exit {code}; {doc['group']}; {len(doc['classes'])} classes")
    print(doc["conclusion"])
