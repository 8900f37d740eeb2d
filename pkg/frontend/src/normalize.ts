/** Label folding shared by search matching and display ordering. */

/**
 * Fold a label for comparison: strip diacritics, unify apostrophes,
 * lowercase, and collapse runs of whitespace.
 */
export function normalizeLabel(text: string): string {
  return text
    .normalize('NFD')
    .replace(/[̀-ͯ]/g, '')
    .toLowerCase()
    .replace(/œ/g, 'oe')
    .replace(/[’ʼ]/g, "'")
    .replace(/\s+/g, ' ')
    .trim();
}

/** Order labels by their folded form; raw text breaks ties. */
export function compareLabels(a: string, b: string): number {
  const fa = normalizeLabel(a);
  const fb = normalizeLabel(b);
  if (fa < fb) return -1;
  if (fa > fb) return 1;
  if (a < b) return -1;
  if (a > b) return 1;
  return 0;
}
