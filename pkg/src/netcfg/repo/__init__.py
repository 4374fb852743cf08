"""Approved-configuration repository, audit trail and network status snapshots."""

from netcfg.repo.status import NetworkStatusSnapshot, network_status
from netcfg.repo.store import AuditRecord, ConfigsRepo, RepoEntry, canonical_bundle

__all__ = ["AuditRecord", "ConfigsRepo", "NetworkStatusSnapshot", "RepoEntry", "canonical_bundle", "network_status"]
