from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Configuración centralizada usando Pydantic Settings.
    Mapea automáticamente las variables del archivo .env a atributos de Python.
    """

    # --- Configuración de Pydantic ---
    # env_file=".env" le dice a Pydantic que busque este archivo en la raíz del proyecto.
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore"  # Ignora variables en el .env que no estén definidas aquí
    )

    # --- Entorno y Debug ---
    environment: str = "development"
    debug: bool = False

    # --- Cuerpos finitos ---
    # Tamaño máximo de q para construir tablas de logaritmo discreto
    field_table_bound: int = 2 ** 20

    # --- Orlik-Solomon ---
    # C(#hiperplanos, grado máximo) permitido antes de abortar con "budget exceeded"
    os_subset_budget: int = 10 ** 6
    # n_max por defecto = i + deg(P) + plateau_margin
    plateau_margin: int = 3

    # --- Escaneo ---
    default_shards: int = 1
    max_workers: int = 4
    show_progress: bool = True

    # --- Forma norma (oráculo, no camino de producción) ---
    normform_max_n: int = 6
    normform_max_q: int = 7

    # --- Reportes ---
    report_schema: int = 1
    # Tolerancia de convergencia: |A_n - S_2(q)| < convergence_tolerance * q^-3
    convergence_tolerance: int = 10

    # --- Propiedades Calculadas ---
    @property
    def is_production(self) -> bool:
        """Devuelve True si el entorno actual es producción"""
        return self.environment == "production"

    @property
    def progress_enabled(self) -> bool:
        # En producción no queremos barras de progreso en los logs
        return self.show_progress and not self.is_production

    @property
    def log_level(self) -> str:
        return "DEBUG" if self.debug else "INFO"


# Instanciamos la clase para que pueda ser importada en el resto del proyecto.
# Al hacer esto, Pydantic lee el .env inmediatamente.
settings = Settings()
