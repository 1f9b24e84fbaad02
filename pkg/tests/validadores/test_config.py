"""Testes para o validador de configurações de experimento."""

import json

import pytest
from quantico.core.exceptions import ConfigurationError
from quantico.validadores import config


class TestConfigValidation:
    """Testes de validação de configurações."""

    def test_defaults(self) -> None:
        """Testa os valores padrão."""
        cfg = config.parse({"experiment": "retrieve"})
        assert (cfg.a, cfg.d, cfg.h_size, cfg.trials, cfg.mode) == (4, 2, 4, 1000, "both")
        assert cfg.degree == 6

    def test_unknown_experiment(self) -> None:
        """Testa experimento inexistente."""
        assert config.validate({"experiment": "desconhecido"}) is False
        with pytest.raises(ConfigurationError, match="Experimento deve ser um de"):
            config.validate({"experiment": "desconhecido"}, raise_error=True)

    def test_unknown_field(self) -> None:
        """Testa campo desconhecido."""
        with pytest.raises(ConfigurationError, match="Campos desconhecidos: sementes"):
            config.parse({"experiment": "qldt", "sementes": 3})

    def test_non_positive_trials(self) -> None:
        """Testa trials = 0."""
        with pytest.raises(ConfigurationError, match="Campo trials deve ser >= 1"):
            config.parse({"experiment": "qldt", "trials": 0})

    def test_h_larger_than_field(self) -> None:
        """Testa |H| > |F|."""
        with pytest.raises(ConfigurationError, match="excede \\|F\\|"):
            config.parse({"experiment": "retrieve", "a": 2, "h_size": 5})

    def test_unknown_adversary(self) -> None:
        """Testa estratégia desconhecida."""
        with pytest.raises(ConfigurationError, match="Estratégias desconhecidas"):
            config.parse({"experiment": "retrieve", "adversaries": ["preguicoso"]})

    def test_data_too_long(self) -> None:
        """Testa tabela maior que |H|^d."""
        with pytest.raises(ConfigurationError, match="excede \\|H\\|\\^d"):
            config.parse({"experiment": "retrieve", "d": 1, "h_size": 2, "data": [0, 1, 1]})

    def test_point_of_wrong_dimension(self) -> None:
        """Testa ponto marcado fora de F^d."""
        with pytest.raises(ConfigurationError, match="Campo w deve ser um ponto"):
            config.parse({"experiment": "retrieve", "w": [1, 2, 3]})

    def test_invalid_modulus(self) -> None:
        """Testa módulo redutível."""
        with pytest.raises(ConfigurationError, match="modulus_bits inválido"):
            config.parse({"experiment": "retrieve", "a": 2, "modulus_bits": 5})

    def test_invalid_mode(self) -> None:
        """Testa modo desconhecido."""
        with pytest.raises(ConfigurationError, match="Campo mode"):
            config.parse({"experiment": "qldt", "mode": "rapido"})


class TestConfigSerialize:
    """Testes de serialização e carregamento."""

    def test_round_trip(self) -> None:
        """Testa parse(serialize(cfg)) == cfg."""
        cfg = config.parse({"experiment": "retrieve2", "w": [1, 2], "w2": [3, 4], "seed": 9})
        assert config.parse(config.serialize(cfg)) == cfg

    def test_load_from_file(self, tmp_path) -> None:
        """Testa configuração em arquivo local."""
        arquivo = tmp_path / "r1.json"
        arquivo.write_text(json.dumps({"experiment": "line-counts", "a": 2, "d": 3}), encoding="utf-8")
        cfg = config.carregar(arquivo)
        assert cfg.experiment == "line-counts"
        assert cfg.d == 3
