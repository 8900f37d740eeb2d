import { describe, expect, it } from 'vitest';

import { parseGraph } from '../src/graph';
import { search } from '../src/search';
import { fixtureGraph } from './helpers';

function labelsFor(query: string): string[] {
  return search(query, fixtureGraph()).map((node) => node.label);
}

describe('search', () => {
  it('returns nothing for an empty or blank query', () => {
    const graph = fixtureGraph();
    expect(search('', graph)).toEqual([]);
    expect(search('   ', graph)).toEqual([]);
  });

  it('returns nothing when no label matches', () => {
    expect(labelsFor('zzz')).toEqual([]);
  });

  it('ranks prefix matches first, each block ordered by label', () => {
    expect(labelsFor('eaux')).toEqual(['Eaux minérales', 'Eaux thermales']);
    expect(labelsFor('stations')).toEqual([
      'Stations climatiques, thermales, etc.',
      'Stations thermales',
    ]);
  });

  it('finds mid-label matches after prefix matches', () => {
    expect(labelsFor('thermales')).toEqual([
      'Eaux thermales',
      'Stations climatiques, thermales, etc.',
      'Stations thermales',
    ]);
  });

  it('prefers a prefix match over a lexicographically smaller containment', () => {
    const graph = parseGraph({
      nodes: [
        { id: 'aqueduc', label: 'Aqueduc des eaux', kind: 'concept', docs: [] },
        { id: 'vives', label: 'Eaux vives', kind: 'concept', docs: [] },
      ],
      edges: [],
    });
    expect(search('eaux', graph).map((node) => node.id)).toEqual(['vives', 'aqueduc']);
  });

  it('matches regardless of case, accents, and apostrophe style', () => {
    expect(labelsFor('EAUX MINERALES')).toEqual(['Eaux minérales']);
    expect(labelsFor('minérales')).toEqual(['Eaux minérales']);
    const graph = parseGraph({
      nodes: [{ id: 'europe', label: 'L’Europe', kind: 'concept', docs: [] }],
      edges: [],
    });
    expect(search("l'europe", graph).map((node) => node.id)).toEqual(['europe']);
  });

  it('breaks label ties by id', () => {
    const graph = parseGraph({
      nodes: [
        { id: 'eau_2', label: 'Eau', kind: 'concept', docs: [] },
        { id: 'eau', label: 'Eau', kind: 'concept', docs: [] },
      ],
      edges: [],
    });
    expect(search('eau', graph).map((node) => node.id)).toEqual(['eau', 'eau_2']);
  });
});
