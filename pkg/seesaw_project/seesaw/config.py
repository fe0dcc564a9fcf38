"""
Run configuration: settings.SEESAW defaults, then an optional flat key = value file,
then command-line flags.
"""
import logging
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

from django.conf import settings
from django.core.exceptions import ValidationError

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ('json', 'csv', 'text')


@dataclass(frozen=True)
class RunConfig:
    """
    Fields:
        precision (int): Binary working precision, at least 53.
        radius (int): Lattice radius for θ sums (norm bound).
        quad_depth (int): Quadrature refinement level.
        euler_cutoff (int): Prime bound for truncated Euler products.
        seed (int): Seed for the random suites.
        output_format (str): json, csv or text.
        output_path (str | None): File to write the report to; stdout when None.
        threads (int): Worker threads for lattice shells and sample suites.
    """
    precision: int = 128
    radius: int = 60
    quad_depth: int = 4
    euler_cutoff: int = 200
    seed: int = 0
    output_format: str = 'json'
    output_path: str = None
    threads: int = 1

    @classmethod
    def from_settings(cls):
        defaults = getattr(settings, 'SEESAW', {})
        return cls(
            precision=defaults.get('PRECISION_BITS', cls.precision),
            radius=defaults.get('LATTICE_RADIUS', cls.radius),
            quad_depth=defaults.get('QUAD_DEPTH', cls.quad_depth),
            euler_cutoff=defaults.get('EULER_CUTOFF', cls.euler_cutoff),
            seed=defaults.get('SEED', cls.seed),
            output_format=defaults.get('OUTPUT_FORMAT', cls.output_format),
            output_path=defaults.get('OUTPUT_PATH', cls.output_path),
            threads=defaults.get('THREADS', cls.threads),
        )

    def merged(self, overrides):
        """A copy with every non-None override applied; unknown keys are rejected."""
        known = {f.name: f for f in fields(self)}
        changes = {}
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in known:
                raise ValidationError(f"unknown configuration key {key!r}")
            changes[key] = _coerce(known[key], value)
        return replace(self, **changes)

    def validate(self):
        errors = []
        if self.precision < 53:
            errors.append(f"precision must be at least 53 bits, got {self.precision}")
        for name in ('radius', 'quad_depth', 'euler_cutoff', 'threads'):
            if getattr(self, name) <= 0:
                errors.append(f"{name} must be positive, got {getattr(self, name)}")
        if self.output_format not in OUTPUT_FORMATS:
            errors.append(f"output format must be one of {', '.join(OUTPUT_FORMATS)}, got {self.output_format!r}")
        if errors:
            raise ValidationError(errors)
        return self

    def as_dict(self):
        return asdict(self)


def _coerce(config_field, value):
    if config_field.name in ('output_format', 'output_path'):
        return str(value)
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ValidationError(f"{config_field.name} must be an integer, got {value!r}")


def read_config_file(path):
    """
    Parse a flat `key = value` file. Blank lines and `#` comments are skipped.

    Raises:
        ValidationError: on a line without '=' or a missing file.
    """
    path = Path(path)
    if not path.exists():
        raise ValidationError(f"configuration file {path} does not exist")
    values = {}
    for number, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ValidationError(f"{path}:{number}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split('=', 1))
        values[key.lower()] = value
    logger.debug("read %d configuration keys from %s", len(values), path)
    return values


def build_config(config_path=None, **flags):
    """Settings, then the config file, then flags; validated."""
    cfg = RunConfig.from_settings()
    if config_path:
        cfg = cfg.merged(read_config_file(config_path))
    return cfg.merged(flags).validate()
