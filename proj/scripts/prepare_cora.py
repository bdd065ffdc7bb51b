#!/usr/bin/env python3
"""Convert the Cora citation-network release (CANE layout) into the TSV
formats this project reads.

Expected input directory (https://github.com/thunlp/CANE, data/cora):
  data.txt   one document text per line; line number = node id
  graph.txt  one edge per line: "src dst" (whitespace separated node ids)
  group.txt  one class label per line, aligned with data.txt

Output directory receives docs.tsv, edges.tsv and labels.tsv
(doc_id<TAB>payload per line). Point RLE_CORA_DIR at the output directory
to enable the Cora acceptance criteria.
"""

import argparse
import pathlib
import sys


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("src", type=pathlib.Path,
                    help="directory holding data.txt, graph.txt, group.txt")
    ap.add_argument("dst", type=pathlib.Path,
                    help="output directory for docs.tsv, edges.tsv, labels.tsv")
    args = ap.parse_args()

    for name in ("data.txt", "graph.txt", "group.txt"):
        if not (args.src / name).is_file():
            print(f"error: {args.src / name} not found", file=sys.stderr)
            return 2
    args.dst.mkdir(parents=True, exist_ok=True)

    texts = (args.src / "data.txt").read_text(encoding="utf-8",
                                              errors="replace").splitlines()
    groups = (args.src / "group.txt").read_text(encoding="utf-8").split()
    if len(groups) != len(texts):
        print(f"error: {len(texts)} documents but {len(groups)} labels",
              file=sys.stderr)
        return 2

    with open(args.dst / "docs.tsv", "w", encoding="utf-8") as f:
        for i, text in enumerate(texts):
            f.write(f"c{i}\t{text.replace(chr(9), ' ')}\n")
    with open(args.dst / "labels.tsv", "w", encoding="utf-8") as f:
        for i, label in enumerate(groups):
            f.write(f"c{i}\t{label}\n")

    n_edges = 0
    with open(args.src / "graph.txt", encoding="utf-8") as src, \
         open(args.dst / "edges.tsv", "w", encoding="utf-8") as f:
        for line in src:
            parts = line.split()
            if len(parts) < 2:
                continue
            s, d = int(parts[0]), int(parts[1])
            if not (0 <= s < len(texts) and 0 <= d < len(texts)):
                print(f"error: edge ({s}, {d}) out of range", file=sys.stderr)
                return 2
            f.write(f"c{s}\tc{d}\n")
            n_edges += 1

    print(f"wrote {len(texts)} documents, {n_edges} edges, "
          f"{len(set(groups))} classes to {args.dst}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
