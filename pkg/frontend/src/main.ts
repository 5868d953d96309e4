import { ApiClient } from './api.js';
import { clear, el } from './dom.js';
import { QueryPanel } from './queryPanel.js';
import { WorkflowPanel } from './workflowPanel.js';

declare global {
  interface Window {
    CARBONGOV_API?: string;
  }
}

function boot(): void {
  const mount = document.getElementById('app');
  if (!mount) return;
  const api = new ApiClient(window.CARBONGOV_API ?? '');

  const healthSpan = el('span', { class: 'health muted' }, ['connecting...']);
  const header = el('header', { class: 'app-header' }, [
    el('h1', {}, ['Carbon governance console']),
    healthSpan,
  ]);

  const querySection = el('section', { class: 'panel' });
  const workflowSection = el('section', { class: 'panel hidden' });

  const queryTab = el('button', { class: 'main-tab active', type: 'button' }, ['Q&A']);
  const workflowTab = el('button', { class: 'main-tab', type: 'button' }, ['Workflows']);
  queryTab.addEventListener('click', () => {
    queryTab.classList.add('active');
    workflowTab.classList.remove('active');
    querySection.classList.remove('hidden');
    workflowSection.classList.add('hidden');
  });
  workflowTab.addEventListener('click', () => {
    workflowTab.classList.add('active');
    queryTab.classList.remove('active');
    workflowSection.classList.remove('hidden');
    querySection.classList.add('hidden');
  });

  clear(mount);
  mount.append(
    header,
    el('div', { class: 'main-tabs' }, [queryTab, workflowTab]),
    querySection,
    workflowSection,
  );

  new QueryPanel(querySection, api);
  new WorkflowPanel(workflowSection, api);

  api
    .health()
    .then((info) => {
      healthSpan.textContent = `${info.status} · ${info.documents} documents, ${info.chunks_indexed} chunks indexed`;
    })
    .catch(() => {
      healthSpan.textContent = 'service unreachable; start it with: carbongov serve';
      healthSpan.classList.add('error-text');
    });
}

boot();
