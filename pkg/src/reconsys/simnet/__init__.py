"""Simulated target network: synthetic services, fixtures, spoof injection."""

from .dnsct import CtFixtureServer, StaticResolver
from .fixtures import HospitalFixture, build_hospital_fixture
from .scenarios import SHIPPED, Scenario, load_scenario
from .services import (
    Manifest,
    SimNetwork,
    SimService,
    SimServiceSpec,
    SimUdpService,
    TlsSpec,
    make_self_signed_cert,
)
from .spoof import inject_scenario_spoofs, inject_spoof

__all__ = [
    "CtFixtureServer",
    "HospitalFixture",
    "Manifest",
    "build_hospital_fixture",
    "SHIPPED",
    "Scenario",
    "SimNetwork",
    "SimService",
    "SimServiceSpec",
    "SimUdpService",
    "StaticResolver",
    "TlsSpec",
    "inject_scenario_spoofs",
    "inject_spoof",
    "load_scenario",
    "make_self_signed_cert",
]
