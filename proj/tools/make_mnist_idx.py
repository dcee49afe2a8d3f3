#!/usr/bin/env python3
"""Write IDX image/label files for MNIST digits 0 and 1.

The source is the 5000-sample MNIST subset shipped inside the mlxtend
wheel (mlxtend/data/data/mnist_5k.csv.gz: 784 pixel columns then a label
column). Pass either the wheel or the extracted .csv.gz.

    pip download mlxtend==0.24.0 --no-deps -d /tmp/mlx
    python3 tools/make_mnist_idx.py /tmp/mlx/mlxtend-0.24.0-py3-none-any.whl data/mnist
"""
import argparse
import csv
import gzip
import io
import pathlib
import struct
import zipfile

MEMBER = "mlxtend/data/data/mnist_5k.csv.gz"


def read_rows(src: pathlib.Path):
    if src.suffix == ".whl":
        with zipfile.ZipFile(src) as zf:
            raw = zf.read(MEMBER)
    else:
        raw = src.read_bytes()
    text = gzip.decompress(raw).decode("ascii")
    for row in csv.reader(io.StringIO(text)):
        values = [int(float(v)) for v in row]
        yield values[:784], values[784]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("source", type=pathlib.Path)
    ap.add_argument("outdir", type=pathlib.Path)
    ap.add_argument("--digits", default="0,1")
    args = ap.parse_args()

    keep = {int(d) for d in args.digits.split(",")}
    rows = [(px, lab) for px, lab in read_rows(args.source) if lab in keep]
    args.outdir.mkdir(parents=True, exist_ok=True)
    with open(args.outdir / "images.idx3-ubyte", "wb") as f:
        f.write(struct.pack(">IIII", 2051, len(rows), 28, 28))
        for px, _ in rows:
            f.write(bytes(px))
    with open(args.outdir / "labels.idx1-ubyte", "wb") as f:
        f.write(struct.pack(">II", 2049, len(rows)))
        f.write(bytes(lab for _, lab in rows))
    print(f"wrote {len(rows)} samples to {args.outdir}")


if __name__ == "__main__":
    main()
