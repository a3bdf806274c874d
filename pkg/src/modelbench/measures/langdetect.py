"""Pluggable natural-language identification for label text.

The default backend is a character-trigram rank profile identifier
(Cavnar-Trenkle out-of-place distance) built from small embedded seed
corpora.  Any object exposing ``detect(text) -> list[(lang, score)]``
(ranked best-first) can be plugged in instead.

Identification of short, identifier-like text is noisy by nature; callers
should gate on a minimum text length (the lexical measure uses 20 chars).
"""

from __future__ import annotations

from collections import Counter

_SEED_TEXTS = {
    "en": (
        "the quick brown fox jumps over the lazy dog and runs into the green field. "
        "this is a simple example of an english text that we use to build the language profile. "
        "customers order products and services from the company every week. "
        "information systems support the business process and the people who work with them every day. "
        "we think that most of these words are very common in everyday english writing."
    ),
    "de": (
        "der schnelle braune fuchs springt über den faulen hund und läuft auf die grüne wiese. "
        "dies ist ein einfaches beispiel für einen deutschen text, den wir verwenden, um das sprachprofil zu erstellen. "
        "der kunde bestellt jede woche waren und dienstleistungen bei dem unternehmen. "
        "informationssysteme unterstützen den geschäftsprozess und die menschen, die jeden tag damit arbeiten. "
        "wir denken, dass die meisten dieser wörter im deutschen sehr häufig sind."
    ),
    "fr": (
        "le renard brun rapide saute par dessus le chien paresseux et court dans le champ vert. "
        "ceci est un exemple simple de texte français que nous utilisons pour construire le profil de langue. "
        "le client commande chaque semaine des produits et des services auprès de la société. "
        "les systèmes d'information soutiennent le processus métier et les personnes qui travaillent avec eux chaque jour. "
        "nous pensons que la plupart de ces mots sont très courants en français."
    ),
    "es": (
        "el rápido zorro marrón salta sobre el perro perezoso y corre hacia el campo verde. "
        "este es un ejemplo sencillo de un texto en español que usamos para construir el perfil del idioma. "
        "el cliente pide cada semana productos y servicios a la empresa. "
        "los sistemas de información apoyan el proceso de negocio y a las personas que trabajan con ellos cada día. "
        "pensamos que la mayoría de estas palabras son muy comunes en español."
    ),
    "pt": (
        "a rápida raposa marrom salta sobre o cão preguiçoso e corre para o campo verde. "
        "este é um exemplo simples de um texto em português que usamos para construir o perfil da língua. "
        "o cliente pede todas as semanas produtos e serviços à empresa. "
        "os sistemas de informação apoiam o processo de negócio e as pessoas que trabalham com eles todos os dias. "
        "achamos que a maioria destas palavras é muito comum em português."
    ),
    "it": (
        "la veloce volpe marrone salta sopra il cane pigro e corre nel campo verde. "
        "questo è un semplice esempio di testo italiano che usiamo per costruire il profilo della lingua. "
        "il cliente ordina ogni settimana prodotti e servizi dalla azienda. "
        "i sistemi informativi supportano il processo aziendale e le persone che lavorano con essi ogni giorno. "
        "pensiamo che la maggior parte di queste parole siano molto comuni in italiano."
    ),
    "nl": (
        "de snelle bruine vos springt over de luie hond en rent het groene veld in. "
        "dit is een eenvoudig voorbeeld van een nederlandse tekst die wij gebruiken om het taalprofiel op te bouwen. "
        "de klant bestelt elke week producten en diensten bij het bedrijf. "
        "informatiesystemen ondersteunen het bedrijfsproces en de mensen die er elke dag mee werken. "
        "wij denken dat de meeste van deze woorden in het nederlands heel gebruikelijk zijn."
    ),
}

_PROFILE_SIZE = 400


def _trigrams(text: str) -> list[str]:
    words = "".join(ch if ch.isalpha() else " " for ch in text.lower()).split()
    grams: list[str] = []
    for word in words:
        padded = f" {word} "
        grams.extend(padded[i : i + 3] for i in range(len(padded) - 2))
    return grams


def _rank_profile(text: str, size: int) -> dict[str, int]:
    counts = Counter(_trigrams(text))
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:size]
    return {gram: rank for rank, (gram, _) in enumerate(ranked)}


class TrigramDetector:
    """Character-trigram language identifier over the embedded seed profiles."""

    def __init__(self, seed_texts: dict[str, str] | None = None, profile_size: int = _PROFILE_SIZE):
        self.profile_size = profile_size
        self.profiles = {
            lang: _rank_profile(text, profile_size)
            for lang, text in (seed_texts or _SEED_TEXTS).items()
        }

    def detect(self, text: str) -> list[tuple[str, float]]:
        """Rank languages for ``text``, best first; empty when no signal."""
        sample = _rank_profile(text, self.profile_size)
        if not sample:
            return []
        max_distance = len(sample) * self.profile_size
        results = []
        for lang, profile in sorted(self.profiles.items()):
            distance = sum(
                abs(rank - profile[gram]) if gram in profile else self.profile_size
                for gram, rank in sample.items()
            )
            results.append((lang, 1.0 - distance / max_distance))
        results.sort(key=lambda kv: (-kv[1], kv[0]))
        return results

    def languages(self) -> list[str]:
        return sorted(self.profiles)
