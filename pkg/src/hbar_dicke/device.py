"""Device parameters: qubits, acoustic-mode clusters and readout response matrices.

Device files are JSON documents whose keys carry their units
(``frequency_ghz``, ``coupling_mhz``, ``t1_us`` ...). Everything is stored in
the linear units of the file; :func:`ghz_to_angular` and
:func:`mhz_to_angular` convert to the rad/us used by the simulators.
"""

import json
import math
import warnings
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ConfigParseError, ValidationError
from .readout import ResponseMatrix

FORMAT_VERSION = 1
MAX_MODES = 8
COUPLING_FSR_WARN_RATIO = 0.1

TWO_PI = 2.0 * math.pi


def ghz_to_angular(f_ghz):
    """Linear frequency in GHz -> angular frequency in rad/us."""
    return TWO_PI * 1e3 * np.asarray(f_ghz, dtype=float)


def mhz_to_angular(f_mhz):
    """Linear frequency in MHz -> angular frequency in rad/us."""
    return TWO_PI * np.asarray(f_mhz, dtype=float)


@dataclass(frozen=True)
class QubitSpec:
    name: str
    idle_frequency: float  # GHz
    min_frequency: float  # GHz
    max_frequency: float  # GHz
    anharmonicity: float  # MHz, negative for a transmon
    t1: float = None  # us
    t2_ramsey: float = None  # us
    extra: dict = field(default_factory=dict, compare=True, hash=False)

    def validate(self):
        if not self.min_frequency < self.idle_frequency < self.max_frequency:
            raise ValidationError(
                f"qubit {self.name}: min_frequency < idle_frequency < max_frequency violated"
            )
        if not self.anharmonicity < 0:
            raise ValidationError(f"qubit {self.name}: anharmonicity < 0 violated")
        for label, value in (("t1", self.t1), ("t2_ramsey", self.t2_ramsey)):
            if value is not None and not value > 0:
                raise ValidationError(f"qubit {self.name}: {label} > 0 violated")


@dataclass(frozen=True)
class ModeSpec:
    frequency: float  # GHz
    coupling: float  # MHz

    def __post_init__(self):
        if not math.isfinite(self.frequency) or not math.isfinite(self.coupling):
            raise ValidationError("mode frequency and coupling must be finite")


@dataclass(frozen=True)
class ClusterSpec:
    """A group of near-degenerate modes coupled to one qubit.

    Construction only checks the mode count, so synthetic clusters
    (degenerate or uncoupled) can be built directly for analytic limits.
    Measured-device clusters go through :meth:`validate` on load.
    """

    name: str
    modes: tuple
    qubit: str = None

    def __post_init__(self):
        modes = tuple(m if isinstance(m, ModeSpec) else ModeSpec(*m) for m in self.modes)
        object.__setattr__(self, "modes", modes)
        if not 1 <= len(modes) <= MAX_MODES:
            raise ValidationError(f"cluster {self.name}: mode count must be between 1 and {MAX_MODES}")
        if any(m.coupling < 0 for m in modes):
            raise ValidationError(f"cluster {self.name}: coupling > 0 violated")

    @classmethod
    def from_arrays(cls, frequencies_ghz, couplings_mhz, name="synthetic", qubit=None):
        return cls(name, tuple(ModeSpec(float(f), float(g)) for f, g in zip(frequencies_ghz, couplings_mhz)), qubit)

    @property
    def n_modes(self):
        return len(self.modes)

    @property
    def frequencies(self):
        return np.array([m.frequency for m in self.modes])

    @property
    def couplings(self):
        return np.array([m.coupling for m in self.modes])

    def validate(self):
        for m in self.modes:
            if not m.frequency > 0:
                raise ValidationError(f"cluster {self.name}: frequency > 0 violated")
            if not m.coupling > 0:
                raise ValidationError(f"cluster {self.name}: coupling > 0 violated")
        f = self.frequencies
        if np.any(f[:-1] - f[1:] <= 0):
            raise ValidationError(
                f"cluster {self.name}: modes must be listed in strictly descending frequency "
                "(intra-cluster spacing > 0)"
            )


def combine_clusters(*clusters, name=None):
    """Concatenate clusters into one, e.g. to couple a qubit to neighbouring clusters at once.

    Modes keep their order; pass clusters from highest to lowest frequency to
    keep the result descending.
    """
    if not clusters:
        raise ValidationError("combine_clusters needs at least one cluster")
    qubits = {c.qubit for c in clusters}
    modes = tuple(m for c in clusters for m in c.modes)
    return ClusterSpec(name or "+".join(c.name for c in clusters), modes,
                       qubits.pop() if len(qubits) == 1 else None)


def intra_cluster_spacings(cluster):
    """Adjacent mode spacings in MHz, positive for a descending cluster."""
    if cluster.n_modes < 2:
        raise ValidationError(f"cluster {cluster.name} has a single mode; no spacing defined")
    f = cluster.frequencies
    # differences in GHz carry ~1e-13 representation noise; round to sub-Hz
    return np.round((f[:-1] - f[1:]) * 1e3, 9)


@dataclass(frozen=True)
class DeviceConfig:
    name: str
    qubits: tuple
    clusters: tuple
    response_matrices: dict
    fsr: float  # MHz

    def qubit(self, name):
        for q in self.qubits:
            if q.name == name:
                return q
        raise ValidationError(f"unknown qubit {name!r}; available: {', '.join(q.name for q in self.qubits)}")

    def cluster(self, name):
        for c in self.clusters:
            if c.name == name:
                return c
        raise ValidationError(
            f"unknown cluster {name!r}; available clusters: {', '.join(c.name for c in self.clusters)}"
        )

    def qubit_for(self, cluster):
        return self.qubit(cluster.qubit)

    def validate(self):
        names = [q.name for q in self.qubits]
        if len(set(names)) != len(names):
            raise ValidationError("qubit names must be unique")
        for q in self.qubits:
            q.validate()
        cnames = [c.name for c in self.clusters]
        if len(set(cnames)) != len(cnames):
            raise ValidationError("cluster names must be unique")
        if not self.fsr > 0:
            raise ValidationError("fsr > 0 violated")
        for c in self.clusters:
            c.validate()
            if c.qubit not in names:
                raise ValidationError(f"cluster {c.name} references unknown qubit {c.qubit!r}")
            ratio = c.couplings.max() / self.fsr
            if ratio > COUPLING_FSR_WARN_RATIO:
                warnings.warn(
                    f"cluster {c.name}: max coupling / fsr = {ratio:.3f} exceeds {COUPLING_FSR_WARN_RATIO}",
                    stacklevel=2,
                )
        for qname in self.response_matrices:
            if qname not in names:
                raise ValidationError(f"response matrix for unknown qubit {qname!r}")


_QUBIT_KEYS = {
    "idle_frequency_ghz": "idle_frequency",
    "min_frequency_ghz": "min_frequency",
    "max_frequency_ghz": "max_frequency",
    "anharmonicity_mhz": "anharmonicity",
    "t1_us": "t1",
    "t2_ramsey_us": "t2_ramsey",
}


def _require(tree, key, where):
    if not isinstance(tree, dict) or key not in tree:
        raise ValidationError(f"{where}: missing required key {key!r}")
    return tree[key]


def _number(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{where}: expected a number, got {value!r}")
    return float(value)


def config_from_dict(doc):
    """Build and validate a :class:`DeviceConfig` from a parsed document."""
    if not isinstance(doc, dict):
        raise ValidationError("device document must be a JSON object")
    version = doc.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ValidationError(f"unsupported format_version {version!r}")

    qubits = []
    for i, q in enumerate(_require(doc, "qubits", "device")):
        where = f"qubits[{i}]"
        kwargs = {"name": str(_require(q, "name", where))}
        for key, attr in _QUBIT_KEYS.items():
            if key in q:
                kwargs[attr] = _number(q[key], f"{where}.{key}")
            elif attr not in ("t1", "t2_ramsey"):
                _require(q, key, where)
        kwargs["extra"] = {k: v for k, v in q.items() if k != "name" and k not in _QUBIT_KEYS}
        qubits.append(QubitSpec(**kwargs))

    clusters = []
    for i, c in enumerate(_require(doc, "clusters", "device")):
        where = f"clusters[{i}]"
        modes = []
        for j, m in enumerate(_require(c, "modes", where)):
            mw = f"{where}.modes[{j}]"
            modes.append(
                ModeSpec(
                    _number(_require(m, "frequency_ghz", mw), f"{mw}.frequency_ghz"),
                    _number(_require(m, "coupling_mhz", mw), f"{mw}.coupling_mhz"),
                )
            )
        if any(m.coupling <= 0 for m in modes):
            raise ValidationError(f"{where}: coupling > 0 violated")
        clusters.append(ClusterSpec(str(_require(c, "name", where)), tuple(modes), str(_require(c, "qubit", where))))

    matrices = {}
    for qname, entries in doc.get("response_matrices", {}).items():
        matrices[qname] = ResponseMatrix(np.array(entries, dtype=float))

    cfg = DeviceConfig(
        name=str(doc.get("name", "")),
        qubits=tuple(qubits),
        clusters=tuple(clusters),
        response_matrices=matrices,
        fsr=_number(_require(doc, "fsr_mhz", "device"), "fsr_mhz"),
    )
    cfg.validate()
    return cfg


def parse_device_config(text, source="<string>"):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return config_from_dict(doc)


def load_device_config(path):
    path = Path(path)
    return parse_device_config(path.read_text(encoding="utf-8"), source=str(path))


def config_to_dict(cfg):
    qubits = []
    for q in cfg.qubits:
        entry = {"name": q.name}
        for key, attr in _QUBIT_KEYS.items():
            value = getattr(q, attr)
            if value is not None:
                entry[key] = value
        entry.update(q.extra)
        qubits.append(entry)
    return {
        "format_version": FORMAT_VERSION,
        "name": cfg.name,
        "fsr_mhz": cfg.fsr,
        "qubits": qubits,
        "clusters": [
            {
                "name": c.name,
                "qubit": c.qubit,
                "modes": [{"frequency_ghz": m.frequency, "coupling_mhz": m.coupling} for m in c.modes],
            }
            for c in cfg.clusters
        ],
        "response_matrices": {k: m.tolist() for k, m in cfg.response_matrices.items()},
    }


def dump_device_config(cfg):
    return json.dumps(config_to_dict(cfg), indent=2) + "\n"


def fixture_path(name):
    """Path of a bundled device file, e.g. ``fixture_path("device_A.json")``."""
    return Path(str(resources.files("hbar_dicke").joinpath("data", name)))


def load_fixture(name):
    return load_device_config(fixture_path(name))


SCHEMA_PATH = "hbar_dicke/data/device_schema.json"
