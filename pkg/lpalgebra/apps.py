from django.apps import AppConfig

from .conf import check_settings


class LpAlgebraConfig(AppConfig):
    name = "lpalgebra"
    verbose_name = "LP algebras, anti-symmetric quivers and quasi-triangulation flips"

    def ready(self):
        check_settings()
