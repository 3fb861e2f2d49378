// Display helpers. This is the only module allowed to know namespace IRIs:
// everything else renders strings the server sent.

const PREFIXES: Record<string, string> = {
  "https://example.com/FRIA#": "fria:",
  "https://w3id.org/dpv#": "dpv:",
  "https://w3id.org/dpv/tech#": "tech:",
  "https://w3id.org/dpv/risk#": "risk:",
  "https://w3id.org/dpv/ai#": "ai:",
  "https://w3id.org/dpv/legal/eu/aiact#": "eu-aiact:",
  "http://purl.org/dc/terms/": "dct:",
};

export function shorten(iri: string): string {
  for (const [namespace, prefix] of Object.entries(PREFIXES)) {
    if (iri.startsWith(namespace)) return prefix + iri.slice(namespace.length);
  }
  return iri;
}

export function localName(iri: string): string {
  const hash = iri.lastIndexOf("#");
  const slash = iri.lastIndexOf("/");
  return iri.slice(Math.max(hash, slash) + 1) || iri;
}

// e.g. "FRIAOutcomeRisksMitigated" -> "Risks Mitigated"
export function statusCaption(statusIri: string): string {
  return localName(statusIri)
    .replace(/^FRIA(Outcome|Notification)?/, "")
    .replace(/([a-z])([A-Z])/g, "$1 $2");
}
