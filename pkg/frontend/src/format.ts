/** Percent with one decimal, matching the published tables' precision. */
export function formatPercent(value: number): string {
  return `${(100 * value).toFixed(1)}%`;
}

export function formatRatio(value: number): string {
  return value >= 100 ? value.toFixed(0) : value.toFixed(2);
}

/** Parse an impact-factor field: a finite positive real, or an error message. */
export function parsePositiveReal(text: string): { value: number | null; error: string | null } {
  const trimmed = text.trim();
  if (trimmed === "") {
    return { value: null, error: null }; // empty is not yet an error, just incomplete
  }
  const value = Number(trimmed);
  if (!Number.isFinite(value)) {
    return { value: null, error: "enter a number" };
  }
  if (value <= 0) {
    return { value: null, error: "must be positive" };
  }
  return { value, error: null };
}
