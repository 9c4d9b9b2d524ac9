"""
Jerarquía de errores de la suite de scheduling parcial.

Las operaciones de tipo "reporte" (validate_instance, check_schedule) nunca
lanzan por problemas de contenido: devuelven listas de violaciones. Estas
excepciones cubren errores de uso, contratos y límites de recursos.
"""


class SchedulingError(Exception):
    """Base de todos los errores de la suite"""


class InstanceFormatError(SchedulingError):
    """El JSON de entrada no cumple el esquema"""

    def __init__(self, message, errors=None):
        super().__init__(message)
        self.errors = errors or {}


class InvalidInstanceError(SchedulingError):
    """Instancia estructuralmente inválida (ciclos, k > n, ids duplicados...)"""

    def __init__(self, report):
        self.report = report
        super().__init__('; '.join(report.violations) or 'invalid instance')


class ScheduleStructureError(SchedulingError):
    """El schedule referencia trabajos o máquinas inexistentes"""


class DispatchError(SchedulingError):
    """El solver pedido no aplica a la variante de la instancia"""


class InvalidVariantError(SchedulingError):
    """Combinación de flags que viola las reglas de la tabla de complejidad"""


class BudgetExceededError(SchedulingError):
    """El oráculo exhaustivo agotó su presupuesto de pasos"""

    def __init__(self, budget):
        self.budget = budget
        super().__init__(f'budget exceeded: more than {budget} realization steps')


class TableSizeError(SchedulingError):
    """Tabla de subconjuntos demasiado grande para el número de colores"""


class NotAnAntichainError(SchedulingError):
    """Contrato: el conjunto recibido no es una anticadena de G^t"""


class CertificateError(SchedulingError):
    """Un solver produjo un schedule que el verificador rechaza"""

    def __init__(self, algorithm, verdict):
        self.algorithm = algorithm
        self.verdict = verdict
        super().__init__(f'{algorithm} produced an infeasible schedule: {verdict.violations}')


class GenerationError(SchedulingError):
    """Entrada inválida para un generador de reducciones"""


class PreconditionError(SchedulingError):
    """El certificado de entrada no es válido (coloración impropia, no-clique...)"""


class DecodeError(SchedulingError):
    """El schedule no tiene la estructura que exige el decodificador"""


class AntichainBoundError(SchedulingError):
    """Un recuento de anticadenas supera la cota 4^k (hallazgo, no fallo de uso)"""
