/**
 * Browser entry point: loads /graph.json once, then renders every view
 * as a projection of (graph, state). All graph logic lives in the pure
 * modules; this file only wires DOM events to state transitions.
 */

import { GraphFormatError, parseGraph, type Graph } from './graph.js';
import { search } from './search.js';
import { expand, type NeighborEntry, type RelationGroup } from './expand.js';
import {
  collapseNode,
  expandNode,
  focusNode,
  hasExpansion,
  initialState,
  isFlagged,
  toggleFlag,
  toggleRelation,
  withFlags,
  type ViewState,
} from './state.js';
import { exportFlags, loadFlags, saveFlags, type KeyValueStore } from './flags.js';
import { EDGE_TYPES, type EdgeType, type GraphNode, type NodeKind } from './types.js';

const TYPE_LABELS: Record<EdgeType, string> = {
  subclass_generic: 'générique',
  associated: 'associé',
  used_for: 'employé pour',
  instance_of: 'instance de',
  spatial_within: 'inclusion spatiale',
  spatial_near: 'proximité spatiale',
};

const GROUP_LABELS: Record<RelationGroup, string> = {
  generic: 'Générique / spécifique',
  associated: 'Termes associés',
  used_for: 'Employé pour',
  instance_of: 'Instances et classes',
  spatial: 'Relations spatiales',
};

const KIND_LABELS: Record<NodeKind, string> = {
  concept: 'concept',
  instance: 'lieu',
  temporal: 'période',
};

const DIRECTION_MARKS = { out: '→', in: '←', both: '↔' } as const;

function requiredElement<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el as T;
}

/** localStorage when usable, otherwise an in-memory stand-in. */
function pickStore(): KeyValueStore {
  try {
    const probe = '__probe__';
    window.localStorage.setItem(probe, probe);
    window.localStorage.removeItem(probe);
    return window.localStorage;
  } catch {
    const data = new Map<string, string>();
    return {
      getItem: (key) => data.get(key) ?? null,
      setItem: (key, value) => void data.set(key, value),
    };
  }
}

class App {
  private state: ViewState;
  private notFoundId: string | null = null;

  private readonly searchInput = requiredElement<HTMLInputElement>('search-input');
  private readonly searchResults = requiredElement<HTMLElement>('search-results');
  private readonly filterBar = requiredElement<HTMLElement>('filter-bar');
  private readonly detail = requiredElement<HTMLElement>('detail');
  private readonly groupsPane = requiredElement<HTMLElement>('groups');
  private readonly trail = requiredElement<HTMLElement>('trail');
  private readonly flagsPane = requiredElement<HTMLElement>('flags');
  private readonly exportButton = requiredElement<HTMLButtonElement>('export-flags');

  constructor(
    private readonly graph: Graph,
    private readonly store: KeyValueStore
  ) {
    this.state = withFlags(initialState(), graph, loadFlags(store, graph));
    this.buildFilterBar();
    this.searchInput.addEventListener('input', () => this.renderSearch());
    this.searchInput.addEventListener('keydown', (event) => {
      if (event.key !== 'Enter') return;
      const first = search(this.searchInput.value, this.graph)[0];
      if (first !== undefined) this.focus(first.id);
    });
    this.exportButton.addEventListener('click', () => this.downloadReport());
    window.addEventListener('hashchange', () => this.followHash());
    this.followHash();
    this.render();
  }

  private apply(next: ViewState): void {
    if (next === this.state) return;
    this.state = next;
    saveFlags(this.store, this.state);
    this.render();
  }

  private focus(id: string): void {
    if (!this.graph.byId.has(id)) {
      this.notFoundId = id;
      this.render();
      return;
    }
    const hadNotFound = this.notFoundId !== null;
    this.notFoundId = null;
    const next = focusNode(this.state, this.graph, id);
    if (next === this.state) {
      if (hadNotFound) this.render();
    } else {
      this.apply(next);
    }
    const hash = `#${encodeURIComponent(id)}`;
    if (window.location.hash !== hash) window.location.hash = hash;
  }

  private followHash(): void {
    const raw = window.location.hash.replace(/^#/, '');
    if (raw === '') return;
    this.focus(decodeURIComponent(raw));
  }

  private buildFilterBar(): void {
    for (const type of EDGE_TYPES) {
      const label = document.createElement('label');
      const box = document.createElement('input');
      box.type = 'checkbox';
      box.checked = this.state.relationFilter.has(type);
      box.dataset.type = type;
      box.addEventListener('change', () => {
        this.apply(toggleRelation(this.state, type));
      });
      label.append(box, ` ${TYPE_LABELS[type]}`);
      this.filterBar.append(label);
    }
  }

  private render(): void {
    this.renderSearch();
    this.renderDetail();
    this.renderTrail();
    this.renderFlags();
    for (const box of this.filterBar.querySelectorAll<HTMLInputElement>('input')) {
      box.checked = this.state.relationFilter.has(box.dataset.type as EdgeType);
    }
  }

  private renderSearch(): void {
    this.searchResults.replaceChildren();
    const query = this.searchInput.value;
    if (query.trim() === '') return;
    const hits = search(query, this.graph);
    if (hits.length === 0) {
      const empty = document.createElement('p');
      empty.className = 'muted';
      empty.textContent = `Aucun résultat pour « ${query.trim()} »`;
      this.searchResults.append(empty);
      return;
    }
    for (const hit of hits.slice(0, 20)) {
      const button = document.createElement('button');
      button.type = 'button';
      button.className = 'hit';
      button.append(nodeBadge(hit), ` ${hit.label}`);
      button.addEventListener('click', () => this.focus(hit.id));
      this.searchResults.append(button);
    }
  }

  private renderDetail(): void {
    this.detail.replaceChildren();
    this.groupsPane.replaceChildren();
    if (this.notFoundId !== null) {
      const message = document.createElement('p');
      message.className = 'error';
      message.textContent = `Nœud introuvable : « ${this.notFoundId} »`;
      this.detail.append(message);
      return;
    }
    if (this.state.focus === null) {
      const hint = document.createElement('p');
      hint.className = 'muted';
      hint.textContent = 'Recherchez un terme pour commencer.';
      this.detail.append(hint);
      return;
    }
    const node = this.graph.byId.get(this.state.focus);
    if (node === undefined) return;

    const heading = document.createElement('h2');
    heading.append(node.label, ' ', nodeBadge(node));
    this.detail.append(heading);

    const meta = document.createElement('p');
    meta.className = 'muted';
    meta.textContent = node.origin === '' ? node.id : `${node.id} · origine : ${node.origin}`;
    this.detail.append(meta);

    if (node.note !== undefined) {
      const note = document.createElement('p');
      note.textContent = node.note;
      this.detail.append(note);
    }
    if (node.entry !== undefined) {
      const entry = document.createElement('p');
      entry.className = 'muted';
      const admin = node.entry.admin === '' ? '' : ` (${node.entry.admin})`;
      entry.textContent =
        `${node.entry.class}${admin} · ${node.entry.lat.toFixed(4)}, ` +
        node.entry.lon.toFixed(4);
      this.detail.append(entry);
    }

    const docs = document.createElement('p');
    docs.textContent = node.docs.length === 0 ? 'Documents : aucun' : 'Documents :';
    this.detail.append(docs);
    if (node.docs.length > 0) {
      const list = document.createElement('ul');
      list.className = 'docs';
      for (const doc of node.docs) {
        const item = document.createElement('li');
        item.textContent = doc;
        list.append(item);
      }
      this.detail.append(list);
    }

    const actions = document.createElement('p');
    const expandButton = document.createElement('button');
    expandButton.type = 'button';
    expandButton.textContent = 'Étendre';
    expandButton.addEventListener('click', () => {
      this.apply(expandNode(this.state, this.graph, node.id));
    });
    actions.append(expandButton);
    if (hasExpansion(this.state, node.id)) {
      const collapseButton = document.createElement('button');
      collapseButton.type = 'button';
      collapseButton.textContent = 'Replier';
      collapseButton.addEventListener('click', () => {
        this.apply(collapseNode(this.state, node.id));
      });
      actions.append(' ', collapseButton);
    }
    this.detail.append(actions);

    this.renderGroups(node);
  }

  private renderGroups(node: GraphNode): void {
    const result = expand(node.id, this.graph, this.state.relationFilter);
    if (result.kind === 'not_found') return;
    if (result.groups.length === 0) {
      const empty = document.createElement('p');
      empty.className = 'muted';
      empty.textContent = 'Aucune relation visible avec le filtre courant.';
      this.groupsPane.append(empty);
      return;
    }
    for (const group of result.groups) {
      const section = document.createElement('section');
      const heading = document.createElement('h3');
      heading.textContent = GROUP_LABELS[group.group];
      section.append(heading);
      const list = document.createElement('ul');
      list.className = 'neighbors';
      for (const entry of group.entries) {
        list.append(this.neighborRow(entry));
      }
      section.append(list);
      this.groupsPane.append(section);
    }
  }

  private neighborRow(entry: NeighborEntry): HTMLLIElement {
    const row = document.createElement('li');
    const mark = document.createElement('span');
    mark.className = 'direction';
    mark.textContent = DIRECTION_MARKS[entry.direction];
    mark.title = TYPE_LABELS[entry.edge.type];

    const link = document.createElement('button');
    link.type = 'button';
    link.className = 'node-link';
    link.append(nodeBadge(entry.node), ` ${entry.node.label}`);
    link.addEventListener('click', () => this.focus(entry.node.id));

    const flagged = isFlagged(this.state, entry.edge);
    const flag = document.createElement('button');
    flag.type = 'button';
    flag.className = flagged ? 'flag active' : 'flag';
    flag.textContent = '⚑';
    flag.title = flagged ? 'Retirer le signalement' : 'Signaler cette relation';
    flag.addEventListener('click', () => {
      this.apply(toggleFlag(this.state, this.graph, entry.edge));
    });

    row.append(mark, ' ', link, ' ', flag);
    if (flagged) row.classList.add('flagged');
    return row;
  }

  private renderTrail(): void {
    this.trail.replaceChildren();
    const nodes = [...this.state.visibleNodes]
      .map((id) => this.graph.byId.get(id))
      .filter((node): node is GraphNode => node !== undefined)
      .sort((a, b) => (a.label < b.label ? -1 : a.label > b.label ? 1 : 0));
    for (const node of nodes) {
      const chip = document.createElement('button');
      chip.type = 'button';
      chip.className = node.id === this.state.focus ? 'chip current' : 'chip';
      chip.textContent = node.label;
      chip.addEventListener('click', () => this.focus(node.id));
      this.trail.append(chip);
    }
  }

  private renderFlags(): void {
    this.flagsPane.replaceChildren();
    const count = this.state.flags.size;
    this.exportButton.disabled = count === 0;
    if (count === 0) {
      const empty = document.createElement('p');
      empty.className = 'muted';
      empty.textContent = 'Aucune relation signalée.';
      this.flagsPane.append(empty);
      return;
    }
    const list = document.createElement('ul');
    list.className = 'flag-list';
    for (const ref of this.state.flags.values()) {
      const src = this.graph.byId.get(ref.src);
      const dst = this.graph.byId.get(ref.dst);
      if (src === undefined || dst === undefined) continue;
      const item = document.createElement('li');
      const text = document.createElement('span');
      text.textContent = `${src.label} ${DIRECTION_MARKS.out} ${dst.label} (${TYPE_LABELS[ref.type]})`;
      const remove = document.createElement('button');
      remove.type = 'button';
      remove.className = 'flag active';
      remove.textContent = '×';
      remove.title = 'Retirer le signalement';
      remove.addEventListener('click', () => {
        this.apply(toggleFlag(this.state, this.graph, ref));
      });
      item.append(text, ' ', remove);
      list.append(item);
    }
    this.flagsPane.append(list);
  }

  private downloadReport(): void {
    const blob = new Blob([exportFlags(this.state, this.graph)], {
      type: 'application/json',
    });
    const url = URL.createObjectURL(blob);
    const anchor = document.createElement('a');
    anchor.href = url;
    anchor.download = 'signalements.json';
    document.body.append(anchor);
    anchor.click();
    anchor.remove();
    URL.revokeObjectURL(url);
  }
}

function nodeBadge(node: GraphNode): HTMLSpanElement {
  const badge = document.createElement('span');
  badge.className = `badge badge-${node.kind}`;
  badge.textContent = KIND_LABELS[node.kind];
  return badge;
}

function showFatal(message: string): void {
  const detail = document.getElementById('detail');
  if (detail === null) return;
  detail.replaceChildren();
  const error = document.createElement('p');
  error.className = 'error';
  error.textContent = message;
  detail.append(error);
}

async function boot(): Promise<void> {
  let payload: unknown;
  try {
    const response = await fetch('/graph.json');
    if (!response.ok) {
      showFatal(`Le graphe n'a pas pu être chargé (HTTP ${response.status}).`);
      return;
    }
    payload = await response.json();
  } catch {
    showFatal("Le graphe n'a pas pu être chargé.");
    return;
  }
  try {
    new App(parseGraph(payload), pickStore());
  } catch (error) {
    if (error instanceof GraphFormatError) {
      showFatal(`Document de graphe invalide : ${error.message}`);
      return;
    }
    throw error;
  }
}

void boot();
