import math
import re

from .constants import FLAG_LABELS, REQUIRED_FLAGS, SUPPORTED_N_MAX

_INTEGER_PATTERN = re.compile(r"^[+-]?\d[\d_]*$")


def parse_int(value, field, minimum=None, maximum=None):
    """Converte texto em inteiro aceitando 1000000, 1_000_000 ou 1e6."""
    text = str(value).strip()
    try:
        if _INTEGER_PATTERN.fullmatch(text):
            number = int(text.replace("_", ""))
        else:
            real = float(text)
            if not math.isfinite(real) or real != int(real):
                raise ValueError
            number = int(real)
    except (TypeError, ValueError, OverflowError) as exc:
        raise ValueError(f"Campo {FLAG_LABELS.get(field, field)} inválido: {value!r} não é inteiro.") from exc
    if minimum is not None and number < minimum:
        raise ValueError(f"Campo {FLAG_LABELS.get(field, field)} deve ser >= {minimum}.")
    if maximum is not None and number > maximum:
        raise ValueError(f"Campo {FLAG_LABELS.get(field, field)} deve ser <= {maximum}.")
    return number


def parse_real(value, field, minimum=None):
    """Converte texto em real finito."""
    try:
        number = float(str(value).strip())
    except (TypeError, ValueError) as exc:
        raise ValueError(f"Campo {FLAG_LABELS.get(field, field)} inválido: {value!r}.") from exc
    if not math.isfinite(number):
        raise ValueError(f"Campo {FLAG_LABELS.get(field, field)} deve ser finito.")
    if minimum is not None and number < minimum:
        raise ValueError(f"Campo {FLAG_LABELS.get(field, field)} deve ser >= {minimum}.")
    return number


def parse_range(spec, geometric=False, minimum=1):
    """Interpreta lo:hi[:passo]; com geometric o passo e uma razao (padrao 10)."""
    parts = str(spec or "").split(":")
    if len(parts) not in (2, 3):
        raise ValueError("Campo --range inválido. Use lo:hi ou lo:hi:passo.")
    lo = parse_int(parts[0], "range", minimum=minimum, maximum=SUPPORTED_N_MAX)
    hi = parse_int(parts[1], "range", minimum=minimum, maximum=SUPPORTED_N_MAX)
    if hi < lo:
        raise ValueError("Campo --range inválido: hi menor que lo.")

    if not geometric:
        step = parse_int(parts[2], "range", minimum=1) if len(parts) == 3 else 1
        return list(range(lo, hi + 1, step))

    ratio = parse_real(parts[2], "range") if len(parts) == 3 else 10.0
    if ratio <= 1.0:
        raise ValueError("Campo --range inválido: a razão geométrica deve ser > 1.")
    values = []
    k = 0
    while True:
        current = round(lo * ratio**k)
        if current > hi:
            break
        if not values or current != values[-1]:
            values.append(current)
        k += 1
    return values


def parse_sweep(spec):
    """Interpreta lo:hi:quantidade da varredura de cotas iniciais."""
    parts = str(spec or "").split(":")
    if len(parts) != 3:
        raise ValueError("Campo --bounds-sweep inválido. Use lo:hi:quantidade.")
    lo = parse_real(parts[0], "bounds_sweep", minimum=2.0)
    hi = parse_real(parts[1], "bounds_sweep", minimum=2.0)
    if hi < lo:
        raise ValueError("Campo --bounds-sweep inválido: hi menor que lo.")
    count = parse_int(parts[2], "bounds_sweep", minimum=1)
    return lo, hi, count


def missing_flags(command, values):
    """Retorna os rotulos das opcoes obrigatorias ausentes para o comando."""
    missing = []
    for alternatives in REQUIRED_FLAGS.get(command, ()):
        if not any(values.get(name) not in (None, "") for name in alternatives):
            missing.append(" ou ".join(FLAG_LABELS[name] for name in alternatives))
    return missing
