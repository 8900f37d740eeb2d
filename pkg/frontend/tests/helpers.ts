import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import { parseGraph, type Graph } from '../src/graph';
import type { GraphDocument } from '../src/types';

const HERE = dirname(fileURLToPath(import.meta.url));

/** Decoded copy of the fixture document; callers may mutate their copy. */
export function fixtureDocument(): GraphDocument {
  const raw = readFileSync(join(HERE, 'fixtures', 'graph.json'), 'utf8');
  return JSON.parse(raw) as GraphDocument;
}

export function fixtureGraph(): Graph {
  return parseGraph(fixtureDocument());
}

/** Small hand-built document for shape edge cases. */
export function tinyDocument(): GraphDocument {
  return {
    nodes: [
      { id: 'a', label: 'Alpha', kind: 'concept', origin: 'corpus', docs: ['n1'] },
      { id: 'b', label: 'Bravo', kind: 'concept', origin: 'corpus', docs: [] },
      { id: 'c', label: 'Charlie', kind: 'instance', origin: 'text', docs: ['n2'] },
    ],
    edges: [
      { src: 'a', dst: 'b', type: 'associated', prov: 'thesaurus' },
      { src: 'c', dst: 'a', type: 'instance_of', prov: 'text:n2' },
    ],
  };
}
