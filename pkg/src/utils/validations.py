import math
import re

from src.utils.errors import DomainError

PI_LITERAL = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)?)\s*\*?\s*(?:pi|π)\s*(?:/\s*(\d+\.?\d*))?\s*$",
                        re.IGNORECASE)
INFINITY_LITERALS = {"inf", "infinity", "∞", "+inf"}


class Validations:
    @classmethod
    def validate_int(cls, value: int, min_value: int = None, max_value: int = None, label: str = None) -> int:
        if label is None:
            label = f"'{str(value)}'"
            suffix = ''
        else:
            label = f"{label}"
            suffix = f" ({value})"
        try:
            value = int(value)
        except ValueError:
            raise ValueError(f"{label} is not an integer")
        except OverflowError:
            raise DomainError(f"{label} must be finite")
        except TypeError:
            raise TypeError(f"{label} is not an integer")
        if min_value is not None and value < min_value:
            raise DomainError(f"{label} must be equal to or greater than {min_value}{suffix}")
        if max_value is not None and value > max_value:
            raise DomainError(f"{label} must be less than or equal to {max_value}{suffix}")
        return value

    @classmethod
    def validate_float(cls,
                       value: float,
                       min_value: float = None,
                       max_value: float = None,
                       label: str = None) -> float:
        if label is None:
            label = f"'{str(value)}'"
            suffix = ''
        else:
            label = f"{label}"
            suffix = f" ({value})"
        try:
            value = float(value)
        except ValueError:
            raise ValueError(f"{label} is not a floating point number")
        except TypeError:
            raise TypeError(f"{label} is not a floating point number")
        if math.isnan(value):
            raise DomainError(f"{label} is not a number")
        if min_value is not None and value < min_value:
            raise DomainError(f"{label} must be equal to or greater than {min_value}{suffix}")
        if max_value is not None and value > max_value:
            raise DomainError(f"{label} must be less than or equal to {max_value}{suffix}")
        return value

    @classmethod
    def validate_probability(cls, value: float, label: str = None) -> float:
        return cls.validate_float(value, min_value=0.0, max_value=1.0, label=label)

    @classmethod
    def validate_angle(cls, value: float | str, label: str = None) -> float:
        """
            Accepts decimal radians or a pi literal such as "pi", "pi/2",
            "3pi/4", "-pi/3" or "0.5pi".
        """
        if isinstance(value, str):
            match = PI_LITERAL.match(value)
            if match:
                coefficient = match.group(1)
                if coefficient in ("", "+"):
                    coefficient = 1.0
                elif coefficient == "-":
                    coefficient = -1.0
                else:
                    coefficient = float(coefficient)
                divisor = float(match.group(2)) if match.group(2) else 1.0
                if divisor == 0.0:
                    raise DomainError(f"{label or repr(value)} divides by zero")
                return coefficient * math.pi / divisor
        value = cls.validate_float(value, label=label)
        if math.isinf(value):
            raise DomainError(f"{label or repr(value)} must be finite")
        return value

    @classmethod
    def validate_placement(cls, value: int | float | str, label: str = "M") -> int | float:
        """
            Boundary placements are integers >= 1 or infinity ("inf", "infinity", "∞").
        """
        if isinstance(value, str):
            if value.strip().lower() in INFINITY_LITERALS:
                return math.inf
        elif isinstance(value, float) and math.isinf(value):
            if value > 0:
                return math.inf
            raise DomainError(f"{label} must be equal to or greater than 1 ({value})")
        if isinstance(value, float) and not value.is_integer():
            raise DomainError(f"{label} must be an integer or infinity ({value})")
        return cls.validate_int(value, min_value=1, label=label)
